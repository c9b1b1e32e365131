//! C*-algebraic bundles over finite groups realized inside one matrix algebra.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{flatten, frob_norm, pinv, CMatrix, CVector, C64, CHECK_TOL};
use crate::matspace::MatSubspace;
use crate::report::Report;
use crate::star_algebra::{inv_sqrt_on, solve_unit, ConcreteStarAlgebra};

const ANCHOR: &str = "graded-bundle";

/// Fibers {A_t} in the n×n matrices; the total algebra is C = ⊕A_t and A = A_e.
#[derive(Debug, Clone)]
pub struct GradedCStarBundle {
    group: FiniteGroup,
    n: usize,
    fibers: Vec<MatSubspace>,
    total: MatSubspace,
    unit: Option<CMatrix>,
    /// Pseudo-inverse of the concatenated fiber basis, for grading components.
    decomp: CMatrix,
    offsets: Vec<usize>,
    tol: f64,
}

/// Quasi-basis {(c_j, c_j*)} for E^A together with its index Σ c_j c_j*.
#[derive(Debug, Clone)]
pub struct QuasiBasis {
    pub pairs: Vec<(CMatrix, CMatrix)>,
    pub index: CMatrix,
    /// Largest ‖Σ c_j E(c_j* x) − x‖ over a basis of C.
    pub identity_residual: f64,
}

impl GradedCStarBundle {
    /// Build a bundle from one fiber per group element (index order).
    ///
    /// No axioms are enforced here; use [`GradedCStarBundle::verify`].
    pub fn new(group: FiniteGroup, fibers: Vec<MatSubspace>, tol: f64) -> Result<Self> {
        if fibers.len() != group.order() {
            return Err(Error::ShapeMismatch {
                expected: (group.order(), 1),
                found: (fibers.len(), 1),
            });
        }
        let n = fibers.first().map(|f| f.rows()).unwrap_or(0);
        for f in &fibers {
            if f.shape() != (n, n) {
                return Err(Error::ShapeMismatch {
                    expected: (n, n),
                    found: f.shape(),
                });
            }
        }
        let fibers: Vec<MatSubspace> = fibers.into_iter().map(|f| f.with_tol(tol)).collect();
        let all: Vec<CMatrix> = fibers.iter().flat_map(|f| f.basis().iter().cloned()).collect();
        let total = MatSubspace::span(n, n, &all, tol)?;
        let mut offsets = Vec::with_capacity(fibers.len() + 1);
        offsets.push(0);
        for f in &fibers {
            offsets.push(offsets.last().unwrap() + f.dim());
        }
        let cols: Vec<CVector> = all.iter().map(flatten).collect();
        let decomp = if cols.is_empty() {
            CMatrix::zeros(0, n * n)
        } else {
            pinv(&CMatrix::from_columns(&cols), 1e-12)
        };
        let unit = solve_unit(&total).ok();
        Ok(Self {
            group,
            n,
            fibers,
            total,
            unit,
            decomp,
            offsets,
            tol,
        })
    }

    /// Fibers given by spanning families, one per group element.
    pub fn from_spanning_sets(group: FiniteGroup, n: usize, sets: &[Vec<CMatrix>], tol: f64) -> Result<Self> {
        let fibers = sets
            .iter()
            .map(|s| MatSubspace::span(n, n, s, tol))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, fibers, tol)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn fiber(&self, t: usize) -> &MatSubspace {
        &self.fibers[t]
    }

    pub fn fibers(&self) -> &[MatSubspace] {
        &self.fibers
    }

    pub fn fiber_dims(&self) -> Vec<usize> {
        self.fibers.iter().map(|f| f.dim()).collect()
    }

    pub fn total_space(&self) -> &MatSubspace {
        &self.total
    }

    /// Unit of the total algebra, if one exists.
    pub fn unit(&self) -> Result<&CMatrix> {
        self.unit.as_ref().ok_or(Error::NoUnit {
            residual: f64::INFINITY,
        })
    }

    pub fn total_algebra(&self) -> Result<ConcreteStarAlgebra> {
        ConcreteStarAlgebra::from_space(self.total.clone())
    }

    pub fn fiber_algebra(&self) -> Result<ConcreteStarAlgebra> {
        ConcreteStarAlgebra::from_space(self.fibers[self.group.identity()].clone())
    }

    /// The bundle {A_{f(t)}} for a group automorphism f.
    pub fn relabel(&self, f: &[usize]) -> Result<Self> {
        if !self.group.is_automorphism(f) {
            return Err(Error::NotAnAutomorphism);
        }
        let fibers = f.iter().map(|&t| self.fibers[t].clone()).collect();
        Self::new(self.group.clone(), fibers, self.tol)
    }

    /// Check grading, involution, independence and unit location.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let g = &self.group;
        let sum: usize = self.fibers.iter().map(|f| f.dim()).sum();
        r.check(
            "independence",
            ANCHOR,
            sum == self.total.dim(),
            format!("sum of fiber dims {sum}, total dim {}", self.total.dim()),
        );
        for t in g.elements() {
            for s in g.elements() {
                let id = format!("product/{t}/{s}");
                match self.fibers[t]
                    .product_span(&self.fibers[s])
                    .and_then(|p| self.fibers[g.mul(t, s)].containment_residual(&p))
                {
                    Ok(res) => r.check_residual(id, ANCHOR, res, self.tol, "A_t A_s in A_ts"),
                    Err(e) => r.fail(id, ANCHOR, e.to_string()),
                }
            }
        }
        for t in g.elements() {
            let adj = self.fibers[t].adjoint_span();
            let res = self.fibers[g.inv(t)]
                .equality_residual(&adj)
                .unwrap_or(f64::INFINITY);
            let msg = if res <= self.tol {
                "A_t* = A_{t^-1}".to_string()
            } else {
                "InvolutionViolation".to_string()
            };
            r.check_residual(format!("involution/{t}"), ANCHOR, res, self.tol, msg);
        }
        match &self.unit {
            None => r.fail("unit", ANCHOR, "total algebra has no unit"),
            Some(u) => {
                let res = self.fibers[g.identity()]
                    .relative_residual(u)
                    .unwrap_or(f64::INFINITY);
                r.check_residual("unit", ANCHOR, res, self.tol, "unit of C lies in A_e");
            }
        }
        r
    }

    /// span(A_t A_t*) = A_e for every t.
    pub fn is_saturated(&self) -> bool {
        self.unsaturated_element().is_none()
    }

    pub fn unsaturated_element(&self) -> Option<usize> {
        let ae = &self.fibers[self.group.identity()];
        self.group.elements().find(|&t| {
            let p = self.fibers[t].product_span(&self.fibers[t].adjoint_span());
            !matches!(p.and_then(|p| ae.equals(&p)), Ok(true))
        })
    }

    /// {x_i} ⊆ A_t with Σ x_i x_i* = 1, normalized as S^{-1/2}·b_k for S = Σ b_k b_k*.
    pub fn saturation_witness(&self, t: usize) -> Result<Vec<CMatrix>> {
        let unit = self.unit()?;
        let basis = self.fibers[t].basis();
        let mut s = CMatrix::zeros(self.n, self.n);
        for b in basis {
            s += b * b.adjoint();
        }
        let p = inv_sqrt_on(&s, unit).map_err(|_| Error::NotSaturatedAt(t))?;
        let xs: Vec<CMatrix> = basis.iter().map(|b| &p * b).collect();
        let mut acc = CMatrix::zeros(self.n, self.n);
        for x in &xs {
            acc += x * x.adjoint();
        }
        if frob_norm(&(acc - unit)) > CHECK_TOL {
            return Err(Error::NotSaturatedAt(t));
        }
        Ok(xs)
    }

    /// Coefficients of x against the concatenated fiber bases (A_e first in group order).
    pub fn grading_coords(&self, x: &CMatrix) -> Result<CVector> {
        let res = self.total.relative_residual(x)?;
        if res > self.tol {
            return Err(Error::NotInTotalAlgebra { residual: res });
        }
        Ok(&self.decomp * flatten(x))
    }

    /// Offsets of each fiber's block in [`GradedCStarBundle::grading_coords`].
    pub fn fiber_offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// τ(x) = trace(E^A(x)), a faithful trace-like functional on C.
    pub fn trace_state(&self, x: &CMatrix) -> Result<C64> {
        Ok(self.canonical_expectation(x)?.trace())
    }

    /// Grading components (x_t)_t of an element of C.
    pub fn components(&self, x: &CMatrix) -> Result<Vec<CMatrix>> {
        let coef = self.grading_coords(x)?;
        Ok((0..self.fibers.len())
            .map(|t| {
                let mut m = CMatrix::zeros(self.n, self.n);
                for (k, b) in self.fibers[t].basis().iter().enumerate() {
                    m += b * coef[self.offsets[t] + k];
                }
                m
            })
            .collect())
    }

    /// E^A(x) = x_e.
    pub fn canonical_expectation(&self, x: &CMatrix) -> Result<CMatrix> {
        let mut comps = self.components(x)?;
        Ok(comps.swap_remove(self.group.identity()))
    }

    /// Quasi-basis built from saturation witnesses, and the Watatani index.
    pub fn quasi_basis_and_index(&self) -> Result<QuasiBasis> {
        if !self.is_saturated() {
            return Err(Error::NotSaturated);
        }
        let mut pairs = Vec::new();
        for t in self.group.elements() {
            for x in self.saturation_witness(t)? {
                let xs = x.adjoint();
                pairs.push((x, xs));
            }
        }
        let mut index = CMatrix::zeros(self.n, self.n);
        for (c, cs) in &pairs {
            index += c * cs;
        }
        let mut worst = 0.0_f64;
        for x in self.total.basis() {
            let mut acc = CMatrix::zeros(self.n, self.n);
            for (c, cs) in &pairs {
                acc += c * self.canonical_expectation(&(cs * x))?;
            }
            worst = worst.max(frob_norm(&(acc - x)));
        }
        if worst > CHECK_TOL {
            return Err(Error::QuasiBasisFailure { residual: worst });
        }
        Ok(QuasiBasis {
            pairs,
            index,
            identity_residual: worst,
        })
    }

    /// ‖Ind − |G|·1‖_F.
    pub fn index_defect(&self, qb: &QuasiBasis) -> Result<f64> {
        let g = C64::new(self.group.order() as f64, 0.0);
        Ok(frob_norm(&(&qb.index - self.unit()? * g)))
    }
}
