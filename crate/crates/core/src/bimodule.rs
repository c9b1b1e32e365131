//! Hilbert bimodules realized as spaces of rectangular matrices.
//!
//! Inner products are always ₗ⟨x, y⟩ = x·y* and ⟨x, y⟩ᵣ = x*·y.

use crate::error::{Error, Result};
use crate::linalg::{frob_norm, CMatrix};
use crate::matspace::MatSubspace;
use crate::report::Report;
use crate::star_algebra::{inv_sqrt_on, ConcreteStarAlgebra};

const ANCHOR: &str = "hilbert-bimodule";
const MORITA: &str = "inclusion-morita";

/// A left A-, right B-module X ⊆ n×m matrices.
#[derive(Debug, Clone)]
pub struct ConcreteBimodule {
    left: ConcreteStarAlgebra,
    right: ConcreteStarAlgebra,
    space: MatSubspace,
}

impl ConcreteBimodule {
    pub fn new(left: ConcreteStarAlgebra, right: ConcreteStarAlgebra, space: MatSubspace) -> Result<Self> {
        let expected = (left.n(), right.n());
        if space.shape() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                found: space.shape(),
            });
        }
        Ok(Self { left, right, space })
    }

    /// An algebra as a bimodule over itself.
    pub fn identity(a: &ConcreteStarAlgebra) -> Self {
        Self {
            left: a.clone(),
            right: a.clone(),
            space: a.space().clone(),
        }
    }

    pub fn left(&self) -> &ConcreteStarAlgebra {
        &self.left
    }

    pub fn right(&self) -> &ConcreteStarAlgebra {
        &self.right
    }

    pub fn space(&self) -> &MatSubspace {
        &self.space
    }

    pub fn tol(&self) -> f64 {
        self.space.tol()
    }

    /// Closure of the actions and inner products; fullness when `require_full`.
    pub fn verify(&self, require_full: bool) -> Report {
        let mut r = Report::new();
        let x = &self.space;
        let xs = x.adjoint_span();
        let tol = self.tol();
        let contain = |big: &MatSubspace, small: Result<MatSubspace>| -> f64 {
            small
                .and_then(|s| big.containment_residual(&s))
                .unwrap_or(f64::INFINITY)
        };
        let res = contain(x, self.left.space().product_span(x));
        r.check_residual("left-action", ANCHOR, res, tol, violation(res, tol, "LeftActionViolation"));
        let res = contain(x, x.product_span(self.right.space()));
        r.check_residual("right-action", ANCHOR, res, tol, violation(res, tol, "RightActionViolation"));
        let left_inner = x.product_span(&xs);
        let res = contain(self.left.space(), left_inner.clone());
        r.check_residual("left-inner", ANCHOR, res, tol, violation(res, tol, "LeftInnerProductViolation"));
        let right_inner = xs.product_span(x);
        let res = contain(self.right.space(), right_inner.clone());
        r.check_residual("right-inner", ANCHOR, res, tol, violation(res, tol, "RightInnerProductViolation"));
        let mut unit_res = 0.0_f64;
        for b in x.basis() {
            unit_res = unit_res
                .max(frob_norm(&(self.left.unit() * b - b)))
                .max(frob_norm(&(b * self.right.unit() - b)));
        }
        r.check_residual("unit-action", ANCHOR, unit_res, tol, "units act trivially");
        if require_full {
            let full = |inner: Result<MatSubspace>, alg: &ConcreteStarAlgebra| -> f64 {
                inner
                    .and_then(|s| alg.space().equality_residual(&s))
                    .unwrap_or(f64::INFINITY)
            };
            let res = full(left_inner, &self.left);
            r.check_residual("left-full", ANCHOR, res, tol, violation(res, tol, "span X X* = A"));
            let res = full(right_inner, &self.right);
            r.check_residual("right-full", ANCHOR, res, tol, violation(res, tol, "span X* X = B"));
        }
        r
    }

    pub fn is_full(&self) -> bool {
        self.verify(true).passed()
    }

    /// The conjugate module, realized as adjoints with the algebras swapped.
    pub fn dual(&self) -> Self {
        Self {
            left: self.right.clone(),
            right: self.left.clone(),
            space: self.space.adjoint_span(),
        }
    }

    /// Interior tensor product, realized as the product span X·Y.
    pub fn tensor(&self, other: &ConcreteBimodule) -> Result<Self> {
        if !self.right.same_as(&other.left) {
            return Err(Error::MiddleAlgebraMismatch);
        }
        Ok(Self {
            left: self.left.clone(),
            right: other.right.clone(),
            space: self.space.product_span(&other.space)?,
        })
    }

    /// {u_i} ⊆ X with Σ u_i u_i* = 1_A.
    pub fn right_frame(&self) -> Result<Vec<CMatrix>> {
        let n = self.left.n();
        let mut s = CMatrix::zeros(n, n);
        for b in self.space.basis() {
            s += b * b.adjoint();
        }
        let p = inv_sqrt_on(&s, self.left.unit())
            .map_err(|_| Error::NotAnEquivalenceBimodule("left inner products are not full".into()))?;
        Ok(self.space.basis().iter().map(|b| &p * b).collect())
    }

    /// {v_j} ⊆ X with Σ v_j* v_j = 1_B.
    pub fn left_frame(&self) -> Result<Vec<CMatrix>> {
        let m = self.right.n();
        let mut s = CMatrix::zeros(m, m);
        for b in self.space.basis() {
            s += b.adjoint() * b;
        }
        let q = inv_sqrt_on(&s, self.right.unit())
            .map_err(|_| Error::NotAnEquivalenceBimodule("right inner products are not full".into()))?;
        Ok(self.space.basis().iter().map(|b| b * &q).collect())
    }
}

fn violation(res: f64, tol: f64, name: &str) -> String {
    if res <= tol {
        String::new()
    } else {
        name.to_string()
    }
}

/// A C–D equivalence bimodule Y with a subspace X that should be an A–B equivalence bimodule.
#[derive(Debug, Clone)]
pub struct InclusionMoritaDatum {
    pub big: ConcreteBimodule,
    pub small_space: MatSubspace,
    pub small_left: ConcreteStarAlgebra,
    pub small_right: ConcreteStarAlgebra,
}

impl InclusionMoritaDatum {
    /// The algebra C over itself with X = A, for an inclusion A ⊆ C.
    pub fn identity(c: &ConcreteStarAlgebra, a: &ConcreteStarAlgebra) -> Self {
        Self {
            big: ConcreteBimodule::identity(c),
            small_space: a.space().clone(),
            small_left: a.clone(),
            small_right: a.clone(),
        }
    }
}

/// Strong Morita equivalence of A ⊆ C and B ⊆ D with respect to (Y, X).
pub fn check_inclusion_morita(d: &InclusionMoritaDatum) -> Report {
    let mut r = Report::new();
    let y = d.big.space();
    let x = &d.small_space;
    let tol = d.big.tol();
    let res = y.containment_residual(x).unwrap_or(f64::INFINITY);
    r.check_residual("subspace", MORITA, res, tol, "X inside Y");
    let res = d
        .big
        .left()
        .space()
        .containment_residual(d.small_left.space())
        .unwrap_or(f64::INFINITY);
    r.check_residual("left-inclusion", MORITA, res, tol, "A inside C");
    let res = d
        .big
        .right()
        .space()
        .containment_residual(d.small_right.space())
        .unwrap_or(f64::INFINITY);
    r.check_residual("right-inclusion", MORITA, res, tol, "B inside D");
    r.merge("big", d.big.verify(true));
    match ConcreteBimodule::new(d.small_left.clone(), d.small_right.clone(), x.clone()) {
        Ok(small) => r.merge("small", small.verify(true)),
        Err(e) => r.fail("small", MORITA, e.to_string()),
    }
    let xs = x.adjoint_span();
    let res = y
        .product_span(&xs)
        .and_then(|p| d.big.left().space().equality_residual(&p))
        .unwrap_or(f64::INFINITY);
    r.check_residual("left-span", MORITA, res, tol, "span Y X* = C");
    let res = y
        .adjoint_span()
        .product_span(x)
        .and_then(|p| d.big.right().space().equality_residual(&p))
        .unwrap_or(f64::INFINITY);
    r.check_residual("right-span", MORITA, res, tol, "span Y* X = D");
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, real_matrix, unit_matrix, DEFAULT_TOL};

    const T: f64 = DEFAULT_TOL;

    fn m2() -> ConcreteStarAlgebra {
        ConcreteStarAlgebra::full(2, T)
    }

    fn scalars(n: usize) -> ConcreteStarAlgebra {
        ConcreteStarAlgebra::generate(n, &[identity(n)], T).unwrap()
    }

    #[test]
    fn algebra_over_itself_is_full() {
        let x = ConcreteBimodule::identity(&m2());
        assert!(x.verify(true).passed());
    }

    #[test]
    fn row_subspace_fails_left_action() {
        let sp = MatSubspace::span(2, 2, &[unit_matrix(2, 0, 0), unit_matrix(2, 0, 1)], T).unwrap();
        let x = ConcreteBimodule::new(m2(), m2(), sp).unwrap();
        let r = x.verify(false);
        assert_eq!(r.get("left-action").unwrap().message, "LeftActionViolation");
        assert!(r.get("right-action").unwrap().status == crate::report::Status::Pass);
    }

    #[test]
    fn zero_module_is_not_full() {
        let x = ConcreteBimodule::new(scalars(1), scalars(1), MatSubspace::zero(1, 1, T)).unwrap();
        assert!(x.verify(false).passed());
        assert!(!x.verify(true).passed());
    }

    #[test]
    fn dual_of_row_vectors() {
        let b = ConcreteStarAlgebra::generate(2, &[unit_matrix(2, 0, 0)], T).unwrap();
        let sp = MatSubspace::span(1, 2, &[real_matrix(1, 2, &[1.0, 0.0])], T).unwrap();
        let x = ConcreteBimodule::new(scalars(1), b, sp).unwrap();
        assert!(x.verify(true).passed());
        let d = x.dual();
        assert_eq!(d.space().shape(), (2, 1));
        assert!(d.dual().space().equals(x.space()).unwrap());
    }

    #[test]
    fn rows_tensor_columns_is_scalars() {
        let rows = ConcreteBimodule::new(scalars(1), m2(), MatSubspace::full(1, 2, T)).unwrap();
        let t = rows.tensor(&rows.dual()).unwrap();
        assert_eq!(t.space().dim(), 1);
        assert!(matches!(rows.tensor(&rows), Err(Error::MiddleAlgebraMismatch)));
    }

    #[test]
    fn frames_sum_to_units() {
        let rows = ConcreteBimodule::new(scalars(1), m2(), MatSubspace::full(1, 2, T)).unwrap();
        let u = rows.right_frame().unwrap();
        let s: CMatrix = u.iter().map(|x| x * x.adjoint()).sum();
        assert!((s - identity(1)).norm() < 1e-12);
        let v = rows.left_frame().unwrap();
        let s: CMatrix = v.iter().map(|x| x.adjoint() * x).sum();
        assert!((s - identity(2)).norm() < 1e-12);
    }

    #[test]
    fn inclusion_datum_trivial_and_zero() {
        let c1 = scalars(1);
        let d = InclusionMoritaDatum::identity(&c1, &c1);
        assert!(check_inclusion_morita(&d).passed());
        let zero = InclusionMoritaDatum {
            small_space: MatSubspace::zero(1, 1, T),
            ..d
        };
        assert!(!check_inclusion_morita(&zero).passed());
    }
}
