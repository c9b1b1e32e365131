//! Equivalence bundles between two bundles over the same group, group actions
//! on algebras and bimodules, and crossed products in the regular representation.

use rayon::prelude::*;

use crate::bimodule::{ConcreteBimodule, InclusionMoritaDatum};
use crate::bundle::GradedCStarBundle;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{frob_norm, identity, CMatrix, CHECK_TOL};
use crate::linmap::LinMap;
use crate::matspace::MatSubspace;
use crate::report::{CheckRecord, Report, Status};
use crate::star_algebra::ConcreteStarAlgebra;

const ANCHOR: &str = "equivalence-bundle";
const ACTION: &str = "group-action";
const CROSSED: &str = "crossed-product";

/// Fibers X_t ⊆ n×m matrices between bundles 𝒜 (n×n) and ℬ (m×m).
#[derive(Debug, Clone)]
pub struct EquivalenceBundle {
    a: GradedCStarBundle,
    b: GradedCStarBundle,
    fibers: Vec<MatSubspace>,
}

impl EquivalenceBundle {
    pub fn new(a: GradedCStarBundle, b: GradedCStarBundle, fibers: Vec<MatSubspace>) -> Result<Self> {
        if a.group() != b.group() {
            return Err(Error::NotAGroup("bundles are over different groups".into()));
        }
        if fibers.len() != a.group().order() {
            return Err(Error::ShapeMismatch {
                expected: (a.group().order(), 1),
                found: (fibers.len(), 1),
            });
        }
        for f in &fibers {
            if f.shape() != (a.n(), b.n()) {
                return Err(Error::ShapeMismatch {
                    expected: (a.n(), b.n()),
                    found: f.shape(),
                });
            }
        }
        Ok(Self { a, b, fibers })
    }

    /// 𝒜 as an equivalence bundle over itself, X_t = A_t.
    pub fn identity(bundle: &GradedCStarBundle) -> Self {
        Self {
            a: bundle.clone(),
            b: bundle.clone(),
            fibers: bundle.fibers().to_vec(),
        }
    }

    pub fn left_bundle(&self) -> &GradedCStarBundle {
        &self.a
    }

    pub fn right_bundle(&self) -> &GradedCStarBundle {
        &self.b
    }

    pub fn fiber(&self, t: usize) -> &MatSubspace {
        &self.fibers[t]
    }

    pub fn fibers(&self) -> &[MatSubspace] {
        &self.fibers
    }

    pub fn group(&self) -> &FiniteGroup {
        self.a.group()
    }

    fn tol(&self) -> f64 {
        self.a.tol()
    }

    /// Every condition keyed by (condition, t, s); pairs are checked in parallel.
    pub fn verify(&self) -> Report {
        let g = self.group();
        let tol = self.tol();
        let pairs: Vec<(usize, usize)> = g
            .elements()
            .flat_map(|t| g.elements().map(move |s| (t, s)))
            .collect();
        let records: Vec<Vec<CheckRecord>> = pairs
            .par_iter()
            .map(|&(t, s)| self.pair_checks(t, s, tol))
            .collect();
        let mut r = Report::new();
        for rec in records.into_iter().flatten() {
            r.push(rec);
        }
        let all: Vec<CMatrix> = self.fibers.iter().flat_map(|f| f.basis().iter().cloned()).collect();
        let sum: usize = self.fibers.iter().map(|f| f.dim()).sum();
        let total = MatSubspace::span(self.a.n(), self.b.n(), &all, tol).map(|s| s.dim());
        r.check(
            "independence",
            ANCHOR,
            total.map(|d| d == sum).unwrap_or(false),
            format!("sum of fiber dims {sum}"),
        );
        let de = self.fibers[g.identity()].dim();
        r.check(
            "fiber-dims",
            ANCHOR,
            self.fibers.iter().all(|f| f.dim() == de),
            format!("{:?}", self.fibers.iter().map(|f| f.dim()).collect::<Vec<_>>()),
        );
        r
    }

    fn pair_checks(&self, t: usize, s: usize, tol: f64) -> Vec<CheckRecord> {
        let g = self.group();
        let contain = |big: &MatSubspace, p: Result<MatSubspace>| {
            p.and_then(|p| big.containment_residual(&p)).unwrap_or(f64::INFINITY)
        };
        let equal = |big: &MatSubspace, p: Result<MatSubspace>| {
            p.and_then(|p| big.equality_residual(&p)).unwrap_or(f64::INFINITY)
        };
        let ts = g.mul(t, s);
        let xt = &self.fibers[t];
        let xs = &self.fibers[s];
        let mut out = Vec::with_capacity(4);
        let mk = |cond: &str, res: f64, fail_msg: &str| CheckRecord {
            id: format!("{cond}/{t}/{s}"),
            anchor: ANCHOR.to_string(),
            status: if res <= tol { Status::Pass } else { Status::Fail },
            residual: Some(res),
            message: if res <= tol { String::new() } else { fail_msg.to_string() },
        };
        out.push(mk(
            "left-action",
            contain(&self.fibers[ts], self.a.fiber(t).product_span(xs)),
            "A_t X_s not inside X_ts",
        ));
        out.push(mk(
            "right-action",
            contain(&self.fibers[ts], xt.product_span(self.b.fiber(s))),
            "X_t B_s not inside X_ts",
        ));
        out.push(mk(
            "left-full",
            equal(self.a.fiber(g.mul(t, g.inv(s))), xt.product_span(&xs.adjoint_span())),
            "StrengthenedFullness",
        ));
        out.push(mk(
            "right-full",
            equal(self.b.fiber(g.mul(g.inv(t), s)), xt.adjoint_span().product_span(xs)),
            "StrengthenedFullness",
        ));
        out
    }
}

/// Y = ⊕X_t as a C–D bimodule with X = X_e.
pub fn assemble_total(e: &EquivalenceBundle) -> Result<InclusionMoritaDatum> {
    let assembly = |err: Error| Error::AssemblyFailure(err.to_string());
    let c = e.a.total_algebra().map_err(assembly)?;
    let d = e.b.total_algebra().map_err(assembly)?;
    let all: Vec<CMatrix> = e.fibers.iter().flat_map(|f| f.basis().iter().cloned()).collect();
    let y = MatSubspace::span(e.a.n(), e.b.n(), &all, e.tol())?;
    let big = ConcreteBimodule::new(c, d, y)?;
    let report = big.verify(true);
    if !report.passed() {
        return Err(Error::AssemblyFailure(report.failure_ids().join(", ")));
    }
    Ok(InclusionMoritaDatum {
        big,
        small_space: e.fibers[e.group().identity()].clone(),
        small_left: e.a.fiber_algebra().map_err(assembly)?,
        small_right: e.b.fiber_algebra().map_err(assembly)?,
    })
}

/// An action of a finite group on a concrete *-algebra by linear maps.
#[derive(Debug, Clone)]
pub struct ActionSystem {
    algebra: ConcreteStarAlgebra,
    group: FiniteGroup,
    maps: Vec<LinMap>,
}

impl ActionSystem {
    pub fn new(algebra: ConcreteStarAlgebra, group: FiniteGroup, maps: Vec<LinMap>) -> Result<Self> {
        if maps.len() != group.order() {
            return Err(Error::ShapeMismatch {
                expected: (group.order(), 1),
                found: (maps.len(), 1),
            });
        }
        Ok(Self {
            algebra,
            group,
            maps,
        })
    }

    /// α_t = Ad(u_t).
    pub fn inner(algebra: ConcreteStarAlgebra, group: FiniteGroup, unitaries: &[CMatrix]) -> Result<Self> {
        let maps = unitaries
            .iter()
            .map(|u| LinMap::from_fn(algebra.space(), algebra.space(), |x| u * x * u.adjoint()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, group, maps)
    }

    pub fn trivial(algebra: ConcreteStarAlgebra, group: FiniteGroup) -> Self {
        let id = LinMap::identity(algebra.space());
        let maps = vec![id; group.order()];
        Self {
            algebra,
            group,
            maps,
        }
    }

    /// Each α_t fitted from (input, output) pairs.
    pub fn from_pairs(
        algebra: ConcreteStarAlgebra,
        group: FiniteGroup,
        pairs: &[Vec<(CMatrix, CMatrix)>],
    ) -> Result<Self> {
        let maps = pairs
            .iter()
            .map(|p| LinMap::fit(algebra.space(), algebra.space(), p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, group, maps)
    }

    pub fn algebra(&self) -> &ConcreteStarAlgebra {
        &self.algebra
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn map(&self, t: usize) -> &LinMap {
        &self.maps[t]
    }

    pub fn apply(&self, t: usize, x: &CMatrix) -> Result<CMatrix> {
        self.maps[t].apply(x)
    }

    /// β_t = α_{f(t)}.
    pub fn compose_automorphism(&self, f: &[usize]) -> Result<Self> {
        if !self.group.is_automorphism(f) {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(Self {
            algebra: self.algebra.clone(),
            group: self.group.clone(),
            maps: f.iter().map(|&t| self.maps[t].clone()).collect(),
        })
    }

    /// *-automorphism and composition checks.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let basis = self.algebra.space().basis();
        let g = &self.group;
        let checks: Vec<Vec<CheckRecord>> = g
            .elements()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&t| {
                let a = &self.maps[t];
                let (mult, adj, unital) =
                    automorphism_defects(a, basis, self.algebra.unit()).unwrap_or((f64::INFINITY, f64::INFINITY, f64::INFINITY));
                let rec = |name: &str, res: f64| CheckRecord {
                    id: format!("{name}/{t}"),
                    anchor: ACTION.to_string(),
                    status: if res <= CHECK_TOL { Status::Pass } else { Status::Fail },
                    residual: Some(res),
                    message: String::new(),
                };
                let mut v = vec![rec("multiplicative", mult), rec("adjoint", adj), rec("unital", unital)];
                v.push(CheckRecord {
                    id: format!("invertible/{t}"),
                    anchor: ACTION.to_string(),
                    status: if a.is_invertible() { Status::Pass } else { Status::Fail },
                    residual: None,
                    message: String::new(),
                });
                v
            })
            .collect();
        for rec in checks.into_iter().flatten() {
            r.push(rec);
        }
        let mut comp = 0.0_f64;
        for s in g.elements() {
            for t in g.elements() {
                let lhs = self.maps[s].compose(&self.maps[t]);
                let d = lhs.distance(&self.maps[g.mul(s, t)]).unwrap_or(f64::INFINITY);
                comp = comp.max(d);
            }
        }
        r.check_residual("composition", ACTION, comp, CHECK_TOL, "a_s a_t = a_st");
        let id = self.maps[g.identity()]
            .distance(&LinMap::identity(self.algebra.space()))
            .unwrap_or(f64::INFINITY);
        r.check_residual("identity", ACTION, id, CHECK_TOL, "a_e = id");
        r
    }
}

/// Multiplicativity, adjoint and unit defects of a linear map on an algebra.
fn automorphism_defects(a: &LinMap, basis: &[CMatrix], unit: &CMatrix) -> Result<(f64, f64, f64)> {
    let mut mult = 0.0_f64;
    let mut adj = 0.0_f64;
    let images = basis.iter().map(|x| a.apply(x)).collect::<Result<Vec<_>>>()?;
    for (x, ax) in basis.iter().zip(&images) {
        adj = adj.max(frob_norm(&(a.apply(&x.adjoint())? - ax.adjoint())));
        for (y, ay) in basis.iter().zip(&images) {
            mult = mult.max(frob_norm(&(a.apply(&(x * y))? - ax * ay)));
        }
    }
    let unital = frob_norm(&(a.apply(unit)? - unit));
    Ok((mult, adj, unital))
}

/// A group action λ on an A–B bimodule compatible with actions α on A and β on B.
#[derive(Debug, Clone)]
pub struct BimoduleAction {
    bimodule: ConcreteBimodule,
    maps: Vec<LinMap>,
    left: ActionSystem,
    right: ActionSystem,
}

impl BimoduleAction {
    pub fn new(
        bimodule: ConcreteBimodule,
        maps: Vec<LinMap>,
        left: ActionSystem,
        right: ActionSystem,
    ) -> Result<Self> {
        if left.group() != right.group() || maps.len() != left.group().order() {
            return Err(Error::IncompatibleActions("group mismatch".into()));
        }
        Ok(Self {
            bimodule,
            maps,
            left,
            right,
        })
    }

    /// λ_t(x) = u_t·x·v_t*.
    pub fn inner(
        bimodule: ConcreteBimodule,
        left: ActionSystem,
        right: ActionSystem,
        u: &[CMatrix],
        v: &[CMatrix],
    ) -> Result<Self> {
        let sp = bimodule.space().clone();
        let maps = u
            .iter()
            .zip(v)
            .map(|(u, v)| LinMap::from_fn(&sp, &sp, |x| u * x * v.adjoint()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(bimodule, maps, left, right)
    }

    pub fn bimodule(&self) -> &ConcreteBimodule {
        &self.bimodule
    }

    pub fn left(&self) -> &ActionSystem {
        &self.left
    }

    pub fn right(&self) -> &ActionSystem {
        &self.right
    }

    pub fn group(&self) -> &FiniteGroup {
        self.left.group()
    }

    pub fn map(&self, t: usize) -> &LinMap {
        &self.maps[t]
    }

    pub fn apply(&self, t: usize, x: &CMatrix) -> Result<CMatrix> {
        self.maps[t].apply(x)
    }

    /// Covariance, inner-product compatibility and composition.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let g = self.group().clone();
        let xb = self.bimodule.space().basis();
        let ab = self.bimodule.left().space().basis();
        let bb = self.bimodule.right().space().basis();
        for t in g.elements() {
            let mut cov = 0.0_f64;
            let mut li = 0.0_f64;
            let mut ri = 0.0_f64;
            let eval = |res: Result<f64>| res.unwrap_or(f64::INFINITY);
            for x in xb {
                let lx = self.apply(t, x);
                for a in ab {
                    for b in bb {
                        cov = cov.max(eval((|| {
                            let lhs = self.apply(t, &(a * x * b))?;
                            let rhs = self.left.apply(t, a)? * lx.clone()? * self.right.apply(t, b)?;
                            Ok(frob_norm(&(lhs - rhs)))
                        })()));
                    }
                }
                for y in xb {
                    li = li.max(eval((|| {
                        let lhs = lx.clone()? * self.apply(t, y)?.adjoint();
                        let rhs = self.left.apply(t, &(x * y.adjoint()))?;
                        Ok(frob_norm(&(lhs - rhs)))
                    })()));
                    ri = ri.max(eval((|| {
                        let lhs = lx.clone()?.adjoint() * self.apply(t, y)?;
                        let rhs = self.right.apply(t, &(x.adjoint() * y))?;
                        Ok(frob_norm(&(lhs - rhs)))
                    })()));
                }
            }
            r.check_residual(format!("covariance/{t}"), ACTION, cov, CHECK_TOL, "l(a x b) = a(a) l(x) b(b)");
            r.check_residual(format!("left-inner/{t}"), ACTION, li, CHECK_TOL, "l(x) l(y)* = a(x y*)");
            r.check_residual(format!("right-inner/{t}"), ACTION, ri, CHECK_TOL, "l(x)* l(y) = b(x* y)");
        }
        let mut comp = 0.0_f64;
        for s in g.elements() {
            for t in g.elements() {
                let d = self.maps[s]
                    .compose(&self.maps[t])
                    .distance(&self.maps[g.mul(s, t)])
                    .unwrap_or(f64::INFINITY);
                comp = comp.max(d);
            }
        }
        r.check_residual("composition", ACTION, comp, CHECK_TOL, "l_s l_t = l_st");
        r
    }
}

/// Output of the crossed-product construction.
#[derive(Debug, Clone)]
pub struct CrossedProduct {
    pub a_bundle: GradedCStarBundle,
    pub b_bundle: GradedCStarBundle,
    pub equivalence: EquivalenceBundle,
    /// Bundle verification plus the four action and inner-product formulas.
    pub report: Report,
}

/// Block-diagonal matrix with blocks f(t) in group order.
fn block_diag(g: &FiniteGroup, rows: usize, cols: usize, f: impl Fn(usize) -> CMatrix) -> CMatrix {
    let k = g.order();
    let mut m = CMatrix::zeros(rows * k, cols * k);
    for t in g.elements() {
        m.view_mut((t * rows, t * cols), (rows, cols)).copy_from(&f(t));
    }
    m
}

/// (λ_s ξ)(t) = ξ(s⁻¹t) on C^n ⊗ C^|G|.
pub fn translation(g: &FiniteGroup, n: usize, s: usize) -> CMatrix {
    let k = g.order();
    let mut m = CMatrix::zeros(n * k, n * k);
    for t in g.elements() {
        let st = g.mul(s, t);
        m.view_mut((st * n, t * n), (n, n)).copy_from(&identity(n));
    }
    m
}

/// Crossed products A⋊G, B⋊G and X⋊G in the regular covariant representation.
pub fn crossed_product_system(
    alpha: &ActionSystem,
    beta: &ActionSystem,
    lambda: &BimoduleAction,
) -> Result<CrossedProduct> {
    let g = alpha.group().clone();
    if beta.group() != &g || lambda.group() != &g {
        return Err(Error::IncompatibleActions("actions are over different groups".into()));
    }
    let compat = lambda.verify();
    if !compat.passed() {
        return Err(Error::IncompatibleActions(compat.failure_ids().join(", ")));
    }
    for (name, sys) in [("left", alpha), ("right", beta)] {
        let rep = sys.verify();
        if !rep.passed() {
            return Err(Error::IncompatibleActions(format!(
                "{name} action: {}",
                rep.failure_ids().join(", ")
            )));
        }
    }
    let tol = alpha.algebra().tol();
    let n = alpha.algebra().n();
    let m = beta.algebra().n();
    let pi_a = |a: &CMatrix| -> Result<CMatrix> {
        let blocks = g
            .elements()
            .map(|t| alpha.apply(g.inv(t), a))
            .collect::<Result<Vec<_>>>()?;
        Ok(block_diag(&g, n, n, |t| blocks[t].clone()))
    };
    let pi_b = |b: &CMatrix| -> Result<CMatrix> {
        let blocks = g
            .elements()
            .map(|t| beta.apply(g.inv(t), b))
            .collect::<Result<Vec<_>>>()?;
        Ok(block_diag(&g, m, m, |t| blocks[t].clone()))
    };
    let pi_x = |x: &CMatrix| -> Result<CMatrix> {
        let blocks = g
            .elements()
            .map(|t| lambda.apply(g.inv(t), x))
            .collect::<Result<Vec<_>>>()?;
        Ok(block_diag(&g, n, m, |t| blocks[t].clone()))
    };
    let ua: Vec<CMatrix> = g.elements().map(|s| translation(&g, n, s)).collect();
    let vb: Vec<CMatrix> = g.elements().map(|s| translation(&g, m, s)).collect();
    let k = g.order();
    let abasis = alpha.algebra().space().basis();
    let bbasis = beta.algebra().space().basis();
    let xbasis = lambda.bimodule().space().basis();

    let mut a_sets = Vec::with_capacity(k);
    let mut b_sets = Vec::with_capacity(k);
    let mut x_fibers = Vec::with_capacity(k);
    for t in g.elements() {
        a_sets.push(abasis.iter().map(|a| Ok(pi_a(a)? * &ua[t])).collect::<Result<Vec<_>>>()?);
        b_sets.push(bbasis.iter().map(|b| Ok(pi_b(b)? * &vb[t])).collect::<Result<Vec<_>>>()?);
        let xs = xbasis.iter().map(|x| Ok(pi_x(x)? * &vb[t])).collect::<Result<Vec<_>>>()?;
        x_fibers.push(MatSubspace::span(n * k, m * k, &xs, tol)?);
    }
    let a_bundle = GradedCStarBundle::from_spanning_sets(g.clone(), n * k, &a_sets, tol)?;
    let b_bundle = GradedCStarBundle::from_spanning_sets(g.clone(), m * k, &b_sets, tol)?;
    let equivalence = EquivalenceBundle::new(a_bundle.clone(), b_bundle.clone(), x_fibers)?;

    let mut report = Report::new();
    report.merge("left-bundle", a_bundle.verify());
    report.merge("right-bundle", b_bundle.verify());
    report.merge("equivalence", equivalence.verify());

    // the four formulas on full spanning sets
    let mut f = [0.0_f64; 4];
    for t in g.elements() {
        for s in g.elements() {
            let ts = g.mul(t, s);
            let st = g.mul(s, t);
            let tsi = g.mul(t, g.inv(s));
            let tis = g.mul(g.inv(t), s);
            for x in xbasis {
                let xw_s = pi_x(x)? * &vb[s];
                let xw_t = pi_x(x)? * &vb[t];
                for a in abasis {
                    let lhs = pi_a(a)? * &ua[t] * &xw_s;
                    let rhs = pi_x(&(a * lambda.apply(t, x)?))? * &vb[ts];
                    f[0] = f[0].max(frob_norm(&(lhs - rhs)));
                }
                for b in bbasis {
                    let lhs = &xw_s * pi_b(b)? * &vb[t];
                    let rhs = pi_x(&(x * beta.apply(s, b)?))? * &vb[st];
                    f[1] = f[1].max(frob_norm(&(lhs - rhs)));
                }
                for y in xbasis {
                    let yw_s = pi_x(y)? * &vb[s];
                    let lhs = &xw_t * yw_s.adjoint();
                    let rhs = pi_a(&(x * lambda.apply(tsi, y)?.adjoint()))? * &ua[tsi];
                    f[2] = f[2].max(frob_norm(&(lhs - rhs)));
                    let lhs = xw_t.adjoint() * &yw_s;
                    let rhs = pi_b(&beta.apply(g.inv(t), &(x.adjoint() * y))?)? * &vb[tis];
                    f[3] = f[3].max(frob_norm(&(lhs - rhs)));
                }
            }
        }
    }
    let names = [
        ("formula/left-action", "(a u_t)(x w_s) = (a l_t(x)) w_ts"),
        ("formula/right-action", "(x w_s)(b v_t) = (x b_s(b)) v_st"),
        ("formula/left-inner", "<x w_t, y w_s> = <x, l_ts^-1(y)> u_ts^-1"),
        ("formula/right-inner", "<x w_t, y w_s> = b_t^-1(<x, y>) v_t^-1 s"),
    ];
    for (res, (id, msg)) in f.iter().zip(names) {
        report.check_residual(id, CROSSED, *res, CHECK_TOL, msg);
    }
    Ok(CrossedProduct {
        a_bundle,
        b_bundle,
        equivalence,
        report,
    })
}

/// The inner action Ad(diag(1, −1)) of Z₂ on M₂, used on A, B and X = M₂.
pub fn inner_m2_system(tol: f64) -> Result<(ActionSystem, ActionSystem, BimoduleAction)> {
    let g = FiniteGroup::cyclic(2);
    let m2 = ConcreteStarAlgebra::full(2, tol);
    let us = vec![identity(2), crate::linalg::pauli_z()];
    let alpha = ActionSystem::inner(m2.clone(), g.clone(), &us)?;
    let beta = alpha.clone();
    let x = ConcreteBimodule::identity(&m2);
    let lambda = BimoduleAction::inner(x, alpha.clone(), beta.clone(), &us, &us)?;
    Ok((alpha, beta, lambda))
}

/// Trivial actions of G on A = B = X = C.
pub fn trivial_scalar_system(g: &FiniteGroup, tol: f64) -> Result<(ActionSystem, ActionSystem, BimoduleAction)> {
    let c = ConcreteStarAlgebra::generate(1, &[identity(1)], tol)?;
    let alpha = ActionSystem::trivial(c.clone(), g.clone());
    let x = ConcreteBimodule::identity(&c);
    let maps = vec![LinMap::identity(x.space()); g.order()];
    let lambda = BimoduleAction::new(x, maps, alpha.clone(), alpha.clone())?;
    Ok((alpha.clone(), alpha, lambda))
}
