//! Linear and conjugate-linear maps between matrix subspaces, stored in coordinates.

use crate::error::{Error, Result};
use crate::linalg::{
    complexify_vec, pinv, rank, real_pinv, real_rank, realify_vec, CMatrix, CVector, RMatrix,
    RVector,
};
use crate::matspace::MatSubspace;

/// How a fitted map failed to be determined by its sample pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitFailure {
    Underdetermined { rank: usize, dim: usize },
    Inconsistent { residual: f64 },
}

impl From<FitFailure> for Error {
    fn from(f: FitFailure) -> Self {
        match f {
            FitFailure::Underdetermined { rank, dim } => Error::Underdetermined { rank, dim },
            FitFailure::Inconsistent { residual } => Error::IllDefinedExtension { residual },
        }
    }
}

/// A complex-linear map dom → cod, as a cod.dim × dom.dim coordinate matrix.
#[derive(Debug, Clone)]
pub struct LinMap {
    dom: MatSubspace,
    cod: MatSubspace,
    mat: CMatrix,
    residual: f64,
}

impl LinMap {
    pub fn from_matrix(dom: MatSubspace, cod: MatSubspace, mat: CMatrix) -> Result<Self> {
        if mat.shape() != (cod.dim(), dom.dim()) {
            return Err(Error::ShapeMismatch {
                expected: (cod.dim(), dom.dim()),
                found: mat.shape(),
            });
        }
        Ok(Self {
            dom,
            cod,
            mat,
            residual: 0.0,
        })
    }

    pub fn identity(space: &MatSubspace) -> Self {
        let n = space.dim();
        Self {
            dom: space.clone(),
            cod: space.clone(),
            mat: CMatrix::identity(n, n),
            residual: 0.0,
        }
    }

    /// Evaluate `f` on the basis of `dom` and read off coordinates in `cod`.
    pub fn from_fn(
        dom: &MatSubspace,
        cod: &MatSubspace,
        f: impl Fn(&CMatrix) -> CMatrix,
    ) -> Result<Self> {
        let pairs: Vec<(CMatrix, CMatrix)> = dom.basis().iter().map(|b| (b.clone(), f(b))).collect();
        Self::fit(dom, cod, &pairs)
    }

    /// Fit the unique linear map sending each input to its output.
    ///
    /// Inputs must span `dom`; the consistency residual is the largest
    /// mismatch over all pairs (including outputs leaving `cod`) relative to
    /// the output scale.
    pub fn fit(dom: &MatSubspace, cod: &MatSubspace, pairs: &[(CMatrix, CMatrix)]) -> Result<Self> {
        Self::try_fit(dom, cod, pairs).map_err(Error::from)
    }

    pub fn try_fit(
        dom: &MatSubspace,
        cod: &MatSubspace,
        pairs: &[(CMatrix, CMatrix)],
    ) -> std::result::Result<Self, FitFailure> {
        let k = dom.dim();
        let n = pairs.len();
        let mut x = CMatrix::zeros(k, n);
        let mut y = CMatrix::zeros(cod.dim(), n);
        let mut scale = 1.0_f64;
        for (j, (a, b)) in pairs.iter().enumerate() {
            let xa = dom.coords(a).map_err(|_| FitFailure::Inconsistent { residual: f64::INFINITY })?;
            let yb = cod.coords(b).map_err(|_| FitFailure::Inconsistent { residual: f64::INFINITY })?;
            x.set_column(j, &xa);
            y.set_column(j, &yb);
            scale = scale.max(b.norm());
        }
        let r = rank(&x, 1e-10);
        if r < k {
            return Err(FitFailure::Underdetermined { rank: r, dim: k });
        }
        let mat = &y * pinv(&x, 1e-12);
        let map = Self {
            dom: dom.clone(),
            cod: cod.clone(),
            mat,
            residual: 0.0,
        };
        let mut worst = 0.0_f64;
        for (a, b) in pairs {
            let d = (map.apply(a).expect("shape checked") - b).norm();
            worst = worst.max(d / scale);
        }
        if worst > dom.tol().max(cod.tol()) * 10.0 {
            return Err(FitFailure::Inconsistent { residual: worst });
        }
        Ok(Self {
            residual: worst,
            ..map
        })
    }

    pub fn dom(&self) -> &MatSubspace {
        &self.dom
    }

    pub fn cod(&self) -> &MatSubspace {
        &self.cod
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// Consistency residual recorded when the map was fitted.
    pub fn fit_residual(&self) -> f64 {
        self.residual
    }

    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        Ok(self.cod.element(&(&self.mat * self.dom.coords(x)?)))
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        LinMap {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            mat: &self.mat * &other.mat,
            residual: self.residual.max(other.residual),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.mat.is_square() && rank(&self.mat, 1e-10) == self.mat.nrows()
    }

    pub fn inverse(&self) -> Result<LinMap> {
        if !self.is_invertible() {
            return Err(Error::Underdetermined {
                rank: rank(&self.mat, 1e-10),
                dim: self.dom.dim(),
            });
        }
        let inv = self.mat.clone().try_inverse().ok_or(Error::Underdetermined {
            rank: 0,
            dim: self.dom.dim(),
        })?;
        Ok(LinMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            mat: inv,
            residual: self.residual,
        })
    }

    /// Largest ‖f(b) − g(b)‖ over the domain basis.
    pub fn distance(&self, other: &LinMap) -> Result<f64> {
        let mut worst = 0.0_f64;
        for b in self.dom.basis() {
            worst = worst.max((self.apply(b)? - other.apply(b)?).norm());
        }
        Ok(worst)
    }
}

/// A real-linear map dom → cod on realified coordinates [Re c; Im c].
#[derive(Debug, Clone)]
pub struct RealLinMap {
    dom: MatSubspace,
    cod: MatSubspace,
    mat: RMatrix,
    residual: f64,
}

impl RealLinMap {
    pub fn from_matrix(dom: MatSubspace, cod: MatSubspace, mat: RMatrix) -> Result<Self> {
        if mat.shape() != (2 * cod.dim(), 2 * dom.dim()) {
            return Err(Error::ShapeMismatch {
                expected: (2 * cod.dim(), 2 * dom.dim()),
                found: mat.shape(),
            });
        }
        Ok(Self {
            dom,
            cod,
            mat,
            residual: 0.0,
        })
    }

    /// Evaluate `f` on the real basis {b_k, i·b_k}; exact for any real-linear `f`.
    pub fn from_fn(
        dom: &MatSubspace,
        cod: &MatSubspace,
        f: impl Fn(&CMatrix) -> CMatrix,
    ) -> Result<Self> {
        let pairs: Vec<(CMatrix, CMatrix)> =
            dom.real_basis().into_iter().map(|b| {
                let fb = f(&b);
                (b, fb)
            }).collect();
        Self::fit(dom, cod, &pairs)
    }

    pub fn fit(dom: &MatSubspace, cod: &MatSubspace, pairs: &[(CMatrix, CMatrix)]) -> Result<Self> {
        Self::try_fit(dom, cod, pairs).map_err(Error::from)
    }

    pub fn try_fit(
        dom: &MatSubspace,
        cod: &MatSubspace,
        pairs: &[(CMatrix, CMatrix)],
    ) -> std::result::Result<Self, FitFailure> {
        let k = 2 * dom.dim();
        let n = pairs.len();
        let mut x = RMatrix::zeros(k, n);
        let mut y = RMatrix::zeros(2 * cod.dim(), n);
        let mut scale = 1.0_f64;
        for (j, (a, b)) in pairs.iter().enumerate() {
            let xa = dom.coords(a).map_err(|_| FitFailure::Inconsistent { residual: f64::INFINITY })?;
            let yb = cod.coords(b).map_err(|_| FitFailure::Inconsistent { residual: f64::INFINITY })?;
            x.set_column(j, &realify_vec(&xa));
            y.set_column(j, &realify_vec(&yb));
            scale = scale.max(b.norm());
        }
        let r = real_rank(&x, 1e-10);
        if r < k {
            return Err(FitFailure::Underdetermined { rank: r, dim: k });
        }
        let mat = &y * real_pinv(&x, 1e-12);
        let map = Self {
            dom: dom.clone(),
            cod: cod.clone(),
            mat,
            residual: 0.0,
        };
        let mut worst = 0.0_f64;
        for (a, b) in pairs {
            let d = (map.apply(a).expect("shape checked") - b).norm();
            worst = worst.max(d / scale);
        }
        if worst > dom.tol().max(cod.tol()) * 10.0 {
            return Err(FitFailure::Inconsistent { residual: worst });
        }
        Ok(Self {
            residual: worst,
            ..map
        })
    }

    pub fn dom(&self) -> &MatSubspace {
        &self.dom
    }

    pub fn cod(&self) -> &MatSubspace {
        &self.cod
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.mat
    }

    pub fn fit_residual(&self) -> f64 {
        self.residual
    }

    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        let r: RVector = &self.mat * realify_vec(&self.dom.coords(x)?);
        let c: CVector = complexify_vec(&r);
        Ok(self.cod.element(&c))
    }

    /// ‖N J + J N‖ where J is multiplication by i; zero iff the map is conjugate-linear.
    pub fn conjugate_linearity_defect(&self) -> f64 {
        let jd = complex_structure(self.dom.dim());
        let jc = complex_structure(self.cod.dim());
        (&self.mat * jd + jc * &self.mat).norm()
    }

    pub fn compose(&self, other: &RealLinMap) -> RealLinMap {
        RealLinMap {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            mat: &self.mat * &other.mat,
            residual: self.residual.max(other.residual),
        }
    }

    /// Largest ‖f(b) − g(b)‖ over the real basis of the domain.
    pub fn distance(&self, other: &RealLinMap) -> Result<f64> {
        let mut worst = 0.0_f64;
        for b in self.dom.real_basis() {
            worst = worst.max((self.apply(&b)? - other.apply(&b)?).norm());
        }
        Ok(worst)
    }
}

/// Multiplication by i on realified coordinates of a k-dimensional space.
pub fn complex_structure(k: usize) -> RMatrix {
    let mut j = RMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        j[(i + k, i)] = 1.0;
        j[(i, i + k)] = -1.0;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, pauli_x, pauli_z, unit_matrix, C64, DEFAULT_TOL};

    fn m2() -> MatSubspace {
        MatSubspace::full(2, 2, DEFAULT_TOL)
    }

    #[test]
    fn fit_recovers_conjugation() {
        let u = pauli_z();
        let f = LinMap::from_fn(&m2(), &m2(), |x| &u * x * &u).unwrap();
        let x = unit_matrix(2, 0, 1);
        assert!((f.apply(&x).unwrap() + &x).norm() < 1e-12);
        assert!(f.compose(&f).distance(&LinMap::identity(&m2())).unwrap() < 1e-12);
    }

    #[test]
    fn inconsistent_pairs_are_rejected() {
        let s = MatSubspace::span(2, 2, &[identity(2)], DEFAULT_TOL).unwrap();
        let pairs = vec![
            (identity(2), identity(2)),
            (identity(2) * C64::new(2.0, 0.0), identity(2)),
        ];
        assert!(matches!(
            LinMap::fit(&s, &s, &pairs),
            Err(Error::IllDefinedExtension { .. })
        ));
    }

    #[test]
    fn underdetermined_fit() {
        let pairs = vec![(identity(2), identity(2))];
        assert!(matches!(
            LinMap::fit(&m2(), &m2(), &pairs),
            Err(Error::Underdetermined { .. })
        ));
    }

    #[test]
    fn adjoint_is_conjugate_linear() {
        let adj = RealLinMap::from_fn(&m2(), &m2(), |x| x.adjoint()).unwrap();
        assert!(adj.conjugate_linearity_defect() < 1e-12);
        let x = pauli_x() * C64::new(0.0, 1.0) + unit_matrix(2, 0, 1);
        assert!((adj.apply(&x).unwrap() - x.adjoint()).norm() < 1e-12);
        let tr = RealLinMap::from_fn(&m2(), &m2(), |x| x.transpose()).unwrap();
        assert!(tr.conjugate_linearity_defect() > 1.0);
    }
}
