//! Subspaces of rectangular complex matrices with Frobenius-orthonormal bases.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{check_shape, flatten, frob_norm, unflatten, CMatrix, CVector, C64, DEFAULT_TOL};

/// A linear subspace of `rows × cols` complex matrices.
///
/// The basis is orthonormal for trace(M*N). `q` holds the flattened basis as
/// columns so that coordinates are a single matrix-vector product.
#[derive(Debug, Clone)]
pub struct MatSubspace {
    rows: usize,
    cols: usize,
    basis: Vec<CMatrix>,
    q: CMatrix,
    tol: f64,
}

impl MatSubspace {
    pub fn zero(rows: usize, cols: usize, tol: f64) -> Self {
        Self {
            rows,
            cols,
            basis: Vec::new(),
            q: CMatrix::zeros(rows * cols, 0),
            tol,
        }
    }

    /// Span of `mats` by modified Gram–Schmidt with one reorthogonalization pass.
    pub fn span(rows: usize, cols: usize, mats: &[CMatrix], tol: f64) -> Result<Self> {
        for m in mats {
            check_shape(m, rows, cols)?;
        }
        let scale = mats.iter().map(frob_norm).fold(1.0_f64, f64::max);
        let thr = tol * scale;
        let mut basis: Vec<CVector> = Vec::new();
        for m in mats {
            let mut v = flatten(m);
            for _ in 0..2 {
                for b in &basis {
                    let coef = b.dotc(&v);
                    v.axpy(-coef, b, C64::new(1.0, 0.0));
                }
            }
            let norm = v.norm();
            if norm > thr {
                basis.push(v.unscale(norm));
            }
        }
        Ok(Self::from_orthonormal_vectors(rows, cols, basis, tol))
    }

    /// Span of matrices produced by an iterator (convenience wrapper).
    pub fn span_iter<I: IntoIterator<Item = CMatrix>>(
        rows: usize,
        cols: usize,
        mats: I,
        tol: f64,
    ) -> Result<Self> {
        let v: Vec<CMatrix> = mats.into_iter().collect();
        Self::span(rows, cols, &v, tol)
    }

    fn from_orthonormal_vectors(rows: usize, cols: usize, basis: Vec<CVector>, tol: f64) -> Self {
        let q = if basis.is_empty() {
            CMatrix::zeros(rows * cols, 0)
        } else {
            DMatrix::from_columns(&basis)
        };
        let basis = basis
            .iter()
            .map(|v| unflatten(v.as_slice(), rows, cols))
            .collect();
        Self {
            rows,
            cols,
            basis,
            q,
            tol,
        }
    }

    /// The full matrix space, spanned by matrix units.
    pub fn full(rows: usize, cols: usize, tol: f64) -> Self {
        let basis = (0..cols)
            .flat_map(|j| (0..rows).map(move |i| (i, j)))
            .map(|(i, j)| {
                let mut v = CVector::zeros(rows * cols);
                v[j * rows + i] = C64::new(1.0, 0.0);
                v
            })
            .collect();
        Self::from_orthonormal_vectors(rows, cols, basis, tol)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Flattened basis as columns of a (rows·cols) × dim matrix.
    pub fn basis_matrix(&self) -> &CMatrix {
        &self.q
    }

    fn check(&self, m: &CMatrix) -> Result<()> {
        check_shape(m, self.rows, self.cols)
    }

    /// Coordinates of the orthogonal projection of `m`.
    pub fn coords(&self, m: &CMatrix) -> Result<CVector> {
        self.check(m)?;
        Ok(self.q.ad_mul(&flatten(m)))
    }

    pub fn element(&self, coords: &CVector) -> CMatrix {
        let v = &self.q * coords;
        unflatten(v.as_slice(), self.rows, self.cols)
    }

    pub fn project(&self, m: &CMatrix) -> Result<CMatrix> {
        Ok(self.element(&self.coords(m)?))
    }

    /// ‖m − proj(m)‖_F.
    pub fn residual(&self, m: &CMatrix) -> Result<f64> {
        Ok(frob_norm(&(m - self.project(m)?)))
    }

    /// Residual relative to max(‖m‖_F, 1).
    pub fn relative_residual(&self, m: &CMatrix) -> Result<f64> {
        Ok(self.residual(m)? / frob_norm(m).max(1.0))
    }

    pub fn contains(&self, m: &CMatrix) -> Result<bool> {
        Ok(self.relative_residual(m)? <= self.tol)
    }

    /// Largest relative residual of `other`'s basis against `self`.
    pub fn containment_residual(&self, other: &MatSubspace) -> Result<f64> {
        self.same_shape(other)?;
        let mut worst = 0.0_f64;
        for b in &other.basis {
            worst = worst.max(self.relative_residual(b)?);
        }
        Ok(worst)
    }

    pub fn contains_space(&self, other: &MatSubspace) -> Result<bool> {
        Ok(self.containment_residual(other)? <= self.tol)
    }

    pub fn equals(&self, other: &MatSubspace) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.dim() == other.dim() && self.contains_space(other)? && other.contains_space(self)?)
    }

    /// Residual of the equality test; infinite when dimensions differ.
    pub fn equality_residual(&self, other: &MatSubspace) -> Result<f64> {
        self.same_shape(other)?;
        if self.dim() != other.dim() {
            return Ok(f64::INFINITY);
        }
        Ok(self
            .containment_residual(other)?
            .max(other.containment_residual(self)?))
    }

    fn same_shape(&self, other: &MatSubspace) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: other.shape(),
            });
        }
        Ok(())
    }

    /// Span of all pairwise basis products.
    pub fn product_span(&self, other: &MatSubspace) -> Result<MatSubspace> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: (self.cols, other.cols),
                found: other.shape(),
            });
        }
        let prods: Vec<CMatrix> = self
            .basis
            .iter()
            .flat_map(|a| other.basis.iter().map(move |b| a * b))
            .collect();
        MatSubspace::span(self.rows, other.cols, &prods, self.tol)
    }

    /// Span of conjugate transposes; the ambient shape is transposed.
    pub fn adjoint_span(&self) -> MatSubspace {
        let adj: Vec<CVector> = self.basis.iter().map(|b| flatten(&b.adjoint())).collect();
        // adjoints of an orthonormal family are orthonormal
        Self::from_orthonormal_vectors(self.cols, self.rows, adj, self.tol)
    }

    pub fn sum(&self, other: &MatSubspace) -> Result<MatSubspace> {
        self.same_shape(other)?;
        let all: Vec<CMatrix> = self.basis.iter().chain(other.basis.iter()).cloned().collect();
        MatSubspace::span(self.rows, self.cols, &all, self.tol)
    }

    /// Span of the images of the basis under `f`.
    pub fn map(
        &self,
        rows: usize,
        cols: usize,
        f: impl Fn(&CMatrix) -> CMatrix,
    ) -> Result<MatSubspace> {
        let imgs: Vec<CMatrix> = self.basis.iter().map(f).collect();
        MatSubspace::span(rows, cols, &imgs, self.tol)
    }

    /// A real spanning family {b_k, i·b_k} of the space viewed as a real vector space.
    pub fn real_basis(&self) -> Vec<CMatrix> {
        let i = C64::new(0.0, 1.0);
        self.basis
            .iter()
            .cloned()
            .chain(self.basis.iter().map(|b| b * i))
            .collect()
    }
}

impl Default for MatSubspace {
    fn default() -> Self {
        Self::zero(0, 0, DEFAULT_TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, pauli_x, pauli_y, pauli_z, real_matrix, unit_matrix};

    const T: f64 = DEFAULT_TOL;

    fn sp(mats: &[CMatrix]) -> MatSubspace {
        MatSubspace::span(2, 2, mats, T).unwrap()
    }

    #[test]
    fn collinear_inputs_have_dim_one() {
        assert_eq!(sp(&[identity(2), identity(2) * C64::new(2.0, 0.0)]).dim(), 1);
    }

    #[test]
    fn matrix_units_span_everything() {
        let units: Vec<CMatrix> = (0..4).map(|k| unit_matrix(2, k / 2, k % 2)).collect();
        assert_eq!(sp(&units).dim(), 4);
        assert_eq!(sp(&[]).dim(), 0);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let r = MatSubspace::span(2, 2, &[identity(3)], T);
        assert!(matches!(r, Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn membership() {
        let s = sp(&[identity(2)]);
        assert!(s.contains(&(identity(2) * C64::new(3.0, 0.0))).unwrap());
        assert!(!s.contains(&unit_matrix(2, 0, 1)).unwrap());
        let d = sp(&[unit_matrix(2, 0, 0), unit_matrix(2, 1, 1)]);
        assert!(d.contains(&real_matrix(2, 2, &[1.0, 0.0, 0.0, 5.0])).unwrap());
    }

    #[test]
    fn products() {
        let p = sp(&[unit_matrix(2, 0, 1)])
            .product_span(&sp(&[unit_matrix(2, 1, 0)]))
            .unwrap();
        assert!(p.equals(&sp(&[unit_matrix(2, 0, 0)])).unwrap());
        let q = sp(&[pauli_x()]).product_span(&sp(&[pauli_y()])).unwrap();
        assert!(q.equals(&sp(&[pauli_z()])).unwrap());
        let s = sp(&[pauli_x(), unit_matrix(2, 0, 1)]);
        assert!(sp(&[identity(2)]).product_span(&s).unwrap().equals(&s).unwrap());
    }

    #[test]
    fn adjoints() {
        assert!(sp(&[unit_matrix(2, 0, 1)])
            .adjoint_span()
            .equals(&sp(&[unit_matrix(2, 1, 0)]))
            .unwrap());
        assert!(sp(&[pauli_y()]).adjoint_span().equals(&sp(&[pauli_y()])).unwrap());
        let rect = MatSubspace::span(1, 2, &[real_matrix(1, 2, &[1.0, 0.0])], T).unwrap();
        assert_eq!(rect.adjoint_span().shape(), (2, 1));
    }

    #[test]
    fn equality() {
        assert!(sp(&[identity(2)]).equals(&sp(&[identity(2) * C64::new(2.0, 0.0)])).unwrap());
        assert!(!sp(&[unit_matrix(2, 0, 0)]).equals(&sp(&[unit_matrix(2, 1, 1)])).unwrap());
        assert!(sp(&[]).equals(&sp(&[])).unwrap());
    }

    #[test]
    fn basis_is_orthonormal() {
        let s = sp(&[identity(2), pauli_x(), real_matrix(2, 2, &[1.0, 2.0, 3.0, 4.0])]);
        let q = s.basis_matrix();
        let g = q.adjoint() * q;
        assert!((g - identity(s.dim())).norm() < 1e-12);
    }

    #[test]
    fn full_space_contains_everything() {
        let f = MatSubspace::full(2, 3, T);
        assert_eq!(f.dim(), 6);
        assert!(f.contains(&CMatrix::from_element(2, 3, C64::new(1.0, -2.0))).unwrap());
    }
}
