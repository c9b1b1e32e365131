//! Concrete *-algebras of square matrices.

use crate::error::{Error, Result};
use crate::linalg::{
    flatten, frob_norm, hermitian_eigen, hermitian_residual, identity, null_space, pinv,
    spectral_apply, CMatrix, CVector, C64,
};
use crate::matspace::MatSubspace;

/// A product- and adjoint-closed subspace of n×n matrices together with its unit.
#[derive(Debug, Clone)]
pub struct ConcreteStarAlgebra {
    space: MatSubspace,
    unit: CMatrix,
}

impl ConcreteStarAlgebra {
    /// The *-algebra generated by `gens` inside the n×n matrices.
    pub fn generate(n: usize, gens: &[CMatrix], tol: f64) -> Result<Self> {
        let mut seed: Vec<CMatrix> = gens.to_vec();
        seed.extend(gens.iter().map(|g| g.adjoint()));
        let mut s = MatSubspace::span(n, n, &seed, tol)?;
        for _ in 0..(n * n).max(1) {
            let grown = s.sum(&s.product_span(&s)?)?;
            if grown.dim() == s.dim() {
                break;
            }
            s = grown;
        }
        Self::from_space(s)
    }

    /// Wrap a subspace after checking closure and solving for the unit.
    pub fn from_space(space: MatSubspace) -> Result<Self> {
        if space.rows() != space.cols() {
            return Err(Error::ShapeMismatch {
                expected: (space.rows(), space.rows()),
                found: space.shape(),
            });
        }
        if !space.contains_space(&space.adjoint_span())? {
            return Err(Error::NotClosed("adjoint"));
        }
        if !space.contains_space(&space.product_span(&space)?)? {
            return Err(Error::NotClosed("product"));
        }
        let unit = solve_unit(&space)?;
        Ok(Self { space, unit })
    }

    /// The full matrix algebra M_n.
    pub fn full(n: usize, tol: f64) -> Self {
        Self {
            space: MatSubspace::full(n, n, tol),
            unit: identity(n),
        }
    }

    pub fn space(&self) -> &MatSubspace {
        &self.space
    }

    pub fn unit(&self) -> &CMatrix {
        &self.unit
    }

    pub fn n(&self) -> usize {
        self.space.rows()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn tol(&self) -> f64 {
        self.space.tol()
    }

    pub fn contains(&self, m: &CMatrix) -> Result<bool> {
        self.space.contains(m)
    }

    /// Same subspace (and hence same unit).
    pub fn same_as(&self, other: &ConcreteStarAlgebra) -> bool {
        self.space.shape() == other.space.shape() && self.space.equals(&other.space).unwrap_or(false)
    }
}

/// Solve u·b = b = b·u for u in the space, over all basis elements b.
pub fn solve_unit(space: &MatSubspace) -> Result<CMatrix> {
    let n = space.rows();
    let basis = space.basis();
    let k = basis.len();
    if k == 0 {
        return Ok(CMatrix::zeros(n, n));
    }
    let block = n * n;
    let mut a = CMatrix::zeros(2 * k * block, k);
    let mut rhs = CVector::zeros(2 * k * block);
    for (j, b) in basis.iter().enumerate() {
        let fb = flatten(b);
        rhs.rows_mut(2 * j * block, block).copy_from(&fb);
        rhs.rows_mut((2 * j + 1) * block, block).copy_from(&fb);
        for (i, s) in basis.iter().enumerate() {
            a.view_mut((2 * j * block, i), (block, 1))
                .copy_from(&flatten(&(s * b)));
            a.view_mut(((2 * j + 1) * block, i), (block, 1))
                .copy_from(&flatten(&(b * s)));
        }
    }
    let coef = pinv(&a, 1e-12) * &rhs;
    let residual = (&a * &coef - &rhs).norm() / (k as f64).sqrt();
    let u = space.element(&coef);
    if residual > space.tol() * 10.0 {
        return Err(Error::NoUnit { residual });
    }
    Ok((&u + u.adjoint()) * C64::new(0.5, 0.0))
}

/// {x ∈ C : x·g = g·x for every g ∈ A}.
pub fn relative_commutant(a: &ConcreteStarAlgebra, c: &ConcreteStarAlgebra) -> Result<MatSubspace> {
    if a.space.shape() != c.space.shape() || !c.space.contains_space(&a.space)? {
        return Err(Error::NotASubalgebra);
    }
    let n = c.n();
    let cb = c.space.basis();
    let ab = a.space.basis();
    let tol = c.tol();
    if cb.is_empty() {
        return Ok(MatSubspace::zero(n, n, tol));
    }
    if ab.is_empty() {
        return Ok(c.space.clone());
    }
    let block = n * n;
    let mut m = CMatrix::zeros(ab.len() * block, cb.len());
    for (i, x) in cb.iter().enumerate() {
        for (j, g) in ab.iter().enumerate() {
            let comm = x * g - g * x;
            m.view_mut((j * block, i), (block, 1)).copy_from(&flatten(&comm));
        }
    }
    let kernel = null_space(&m, tol * 10.0);
    let elems: Vec<CMatrix> = kernel
        .column_iter()
        .map(|col| c.space.element(&col.into_owned()))
        .collect();
    MatSubspace::span(n, n, &elems, tol)
}

/// Hermitian p with p·s·p = 1 for a positive definite Hermitian s.
pub fn inv_sqrt(s: &CMatrix) -> Result<CMatrix> {
    let n = s.nrows();
    if !s.is_square() {
        return Err(Error::ShapeMismatch {
            expected: (n, n),
            found: s.shape(),
        });
    }
    let herm = hermitian_residual(s);
    if herm > 1e-9 * frob_norm(s).max(1.0) {
        return Err(Error::NotPositiveDefinite(format!(
            "not Hermitian (residual {herm:.3e})"
        )));
    }
    let (vals, vecs) = hermitian_eigen(s);
    let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    if max.is_nan() || max <= 0.0 || min <= 1e-8 * max {
        return Err(Error::NotPositiveDefinite(format!(
            "eigenvalues in [{min:.3e}, {max:.3e}]"
        )));
    }
    Ok(spectral_apply(&vals, &vecs, |l| 1.0 / l.sqrt()))
}

/// Inverse square root of s on the range of the projection `unit`.
///
/// Returns p = unit·p·unit with p·s·p = unit.
pub fn inv_sqrt_on(s: &CMatrix, unit: &CMatrix) -> Result<CMatrix> {
    let n = s.nrows();
    let complement = identity(n) - unit;
    let shifted = s + &complement;
    let p = inv_sqrt(&shifted)?;
    let p = unit * p * unit;
    let check = frob_norm(&(&p * s * &p - unit));
    if check > 1e-8 * frob_norm(unit).max(1.0) {
        return Err(Error::NotPositiveDefinite(format!(
            "compression residual {check:.3e}"
        )));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real_matrix, unit_matrix, DEFAULT_TOL};

    const T: f64 = DEFAULT_TOL;

    #[test]
    fn generate_from_matrix_unit() {
        let a = ConcreteStarAlgebra::generate(2, &[unit_matrix(2, 0, 1)], T).unwrap();
        assert_eq!(a.dim(), 4);
        assert!((a.unit() - identity(2)).norm() < 1e-10);
    }

    #[test]
    fn generate_scalars_and_projection() {
        let a = ConcreteStarAlgebra::generate(2, &[identity(2)], T).unwrap();
        assert_eq!(a.dim(), 1);
        let p = unit_matrix(2, 0, 0);
        let b = ConcreteStarAlgebra::generate(2, &[p.clone()], T).unwrap();
        assert_eq!(b.dim(), 1);
        assert!((b.unit() - p).norm() < 1e-10);
    }

    #[test]
    fn generate_is_idempotent() {
        let a = ConcreteStarAlgebra::generate(3, &[unit_matrix(3, 0, 1), unit_matrix(3, 2, 2)], T)
            .unwrap();
        let b = ConcreteStarAlgebra::generate(3, a.space().basis(), T).unwrap();
        assert!(a.same_as(&b));
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn non_closed_space_is_rejected() {
        let s = MatSubspace::span(2, 2, &[unit_matrix(2, 0, 1)], T).unwrap();
        assert!(matches!(
            ConcreteStarAlgebra::from_space(s),
            Err(Error::NotClosed(_))
        ));
    }

    #[test]
    fn commutants() {
        let m2 = ConcreteStarAlgebra::full(2, T);
        let scalars = ConcreteStarAlgebra::generate(2, &[identity(2)], T).unwrap();
        assert_eq!(relative_commutant(&scalars, &m2).unwrap().dim(), 4);
        assert_eq!(relative_commutant(&m2, &m2).unwrap().dim(), 1);
        let diag = ConcreteStarAlgebra::generate(2, &[unit_matrix(2, 0, 0), unit_matrix(2, 1, 1)], T)
            .unwrap();
        let rc = relative_commutant(&diag, &m2).unwrap();
        assert!(rc.equals(diag.space()).unwrap());
        assert!(matches!(
            relative_commutant(&m2, &diag),
            Err(Error::NotASubalgebra)
        ));
    }

    #[test]
    fn inverse_square_roots() {
        assert!((inv_sqrt(&identity(2)).unwrap() - identity(2)).norm() < 1e-12);
        let d = real_matrix(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let p = inv_sqrt(&d).unwrap();
        assert!((p - real_matrix(2, 2, &[0.5, 0.0, 0.0, 1.0])).norm() < 1e-12);
        let s = real_matrix(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let p = inv_sqrt(&s).unwrap();
        assert!((&p * &s * &p - identity(2)).norm() < 1e-10);
        assert!((&p * &s - &s * &p).norm() < 1e-10);
        assert!(matches!(
            inv_sqrt(&real_matrix(2, 2, &[1.0, 0.0, 0.0, 0.0])),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn inverse_square_root_on_corner() {
        let unit = unit_matrix(2, 0, 0);
        let s = real_matrix(2, 2, &[9.0, 0.0, 0.0, 0.0]);
        let p = inv_sqrt_on(&s, &unit).unwrap();
        assert!((p - unit * C64::new(1.0 / 3.0, 0.0)).norm() < 1e-12);
    }
}
