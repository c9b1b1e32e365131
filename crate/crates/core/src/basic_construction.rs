//! The basic construction C₁ = C e_A C for the grading expectation, the
//! projections e_t, the induced action on C₁ and the bundle of its spectral
//! subspaces.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bundle::GradedCStarBundle;
use crate::equivalence_bundle::ActionSystem;
use crate::error::{Error, Result};
use crate::linalg::{
    frob_norm, hermitian_eigen, identity, op_norm, random_unitary, spectral_apply, CMatrix,
    CVector, C64, CHECK_TOL,
};
use crate::linmap::LinMap;
use crate::matspace::MatSubspace;
use crate::report::Report;
use crate::star_algebra::{inv_sqrt, ConcreteStarAlgebra};

const JONES: &str = "jones-projection";
const EPROJ: &str = "e-projections";
const ACTION: &str = "basic-construction-action";
const ISO: &str = "bundle-isomorphism";

/// C represented by left multiplication on L²(C, τ) with τ = trace∘E^A.
#[derive(Debug, Clone)]
pub struct BasicConstructionResult {
    bundle: GradedCStarBundle,
    /// τ-orthonormal basis of C: A_e first, then the other fibers in group order.
    gns_basis: Vec<CMatrix>,
    /// Fiber of each GNS basis vector.
    gns_fiber: Vec<usize>,
    embedded: ConcreteStarAlgebra,
    jones: CMatrix,
    c1: ConcreteStarAlgebra,
    witnesses: Vec<Vec<CMatrix>>,
    e_proj: Vec<CMatrix>,
    action: ActionSystem,
}

impl BasicConstructionResult {
    /// Build ρ, e_A, C₁, the e_t and the action α on C₁.
    pub fn build(bundle: &GradedCStarBundle) -> Result<Self> {
        if !bundle.is_saturated() {
            return Err(Error::NotSaturated);
        }
        let g = bundle.group();
        let tol = bundle.tol();
        let order: Vec<usize> = std::iter::once(g.identity())
            .chain(g.elements().filter(|&t| t != g.identity()))
            .collect();
        let mut raw = Vec::new();
        let mut gns_fiber = Vec::new();
        for &t in &order {
            for b in bundle.fiber(t).basis() {
                raw.push(b.clone());
                gns_fiber.push(t);
            }
        }
        let d = raw.len();
        let mut gram = CMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                gram[(i, j)] = bundle.trace_state(&(raw[i].adjoint() * &raw[j]))?;
            }
        }
        // Frobenius-orthonormal fiber bases are already τ-orthonormal; the
        // general path below only runs for hand-supplied degenerate inputs.
        let gns_basis = if frob_norm(&(&gram - identity(d))) <= 1e-12 {
            raw
        } else {
            let w = inv_sqrt(&gram).map_err(|_| Error::DegenerateForm)?;
            (0..d)
                .map(|l| {
                    let mut h = CMatrix::zeros(bundle.n(), bundle.n());
                    for (k, r) in raw.iter().enumerate() {
                        h += r * w[(k, l)];
                    }
                    h
                })
                .collect()
        };
        let mut partial = Self {
            bundle: bundle.clone(),
            gns_basis,
            gns_fiber,
            embedded: ConcreteStarAlgebra::full(0, tol),
            jones: CMatrix::zeros(d, d),
            c1: ConcreteStarAlgebra::full(0, tol),
            witnesses: Vec::new(),
            e_proj: Vec::new(),
            action: ActionSystem::trivial(ConcreteStarAlgebra::full(0, tol), g.clone()),
        };
        let rho_c: Vec<CMatrix> = bundle
            .total_space()
            .basis()
            .iter()
            .map(|c| partial.rho(c))
            .collect::<Result<_>>()?;
        partial.embedded = ConcreteStarAlgebra::from_space(MatSubspace::span(d, d, &rho_c, tol)?)?;
        let de = bundle.fiber(g.identity()).dim();
        partial.jones = CMatrix::from_fn(d, d, |i, j| {
            if i == j && i < de {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let e_a = partial.jones.clone();
        let spanning: Vec<CMatrix> = rho_c
            .iter()
            .flat_map(|a| rho_c.iter().map(|b| a * &e_a * b).collect::<Vec<_>>())
            .collect();
        partial.c1 = ConcreteStarAlgebra::from_space(MatSubspace::span(d, d, &spanning, tol)?)?;
        partial.witnesses = g
            .elements()
            .map(|t| bundle.saturation_witness(t))
            .collect::<Result<_>>()?;
        partial.e_proj = partial.e_projections_with(&partial.witnesses.clone())?;
        let maps = g
            .elements()
            .map(|t| {
                let et = &partial.e_proj[g.inv(t)];
                let pairs: Vec<(CMatrix, CMatrix)> = rho_c
                    .iter()
                    .flat_map(|a| {
                        rho_c
                            .iter()
                            .map(|b| (a * &e_a * b, a * et * b))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                LinMap::fit(partial.c1.space(), partial.c1.space(), &pairs)
            })
            .collect::<Result<Vec<_>>>()?;
        partial.action = ActionSystem::new(partial.c1.clone(), g.clone(), maps)?;
        Ok(partial)
    }

    pub fn bundle(&self) -> &GradedCStarBundle {
        &self.bundle
    }

    /// dim C, the size of the representation space.
    pub fn d(&self) -> usize {
        self.gns_basis.len()
    }

    pub fn gns_basis(&self) -> &[CMatrix] {
        &self.gns_basis
    }

    /// Group element whose fiber contains each GNS basis vector.
    pub fn gns_fiber(&self) -> &[usize] {
        &self.gns_fiber
    }

    /// ρ(c)_{kl} = τ(h_k* c h_l).
    pub fn rho(&self, c: &CMatrix) -> Result<CMatrix> {
        let d = self.d();
        let mut m = CMatrix::zeros(d, d);
        for l in 0..d {
            let y = c * &self.gns_basis[l];
            for k in 0..d {
                m[(k, l)] = self.bundle.trace_state(&(self.gns_basis[k].adjoint() * &y))?;
            }
        }
        Ok(m)
    }

    /// The element c ∈ C with ρ(c) = m, recovered from m applied to the unit vector.
    pub fn rho_inverse(&self, m: &CMatrix) -> Result<CMatrix> {
        let unit = self.bundle.unit()?;
        let coords: CVector = (0..self.d())
            .map(|k| self.bundle.trace_state(&(self.gns_basis[k].adjoint() * unit)))
            .collect::<Result<Vec<_>>>()
            .map(CVector::from_vec)?;
        let v = m * coords;
        let mut c = CMatrix::zeros(self.bundle.n(), self.bundle.n());
        for (k, h) in self.gns_basis.iter().enumerate() {
            c += h * v[k];
        }
        Ok(c)
    }

    pub fn embedded(&self) -> &ConcreteStarAlgebra {
        &self.embedded
    }

    /// e_A.
    pub fn jones(&self) -> &CMatrix {
        &self.jones
    }

    pub fn c1(&self) -> &ConcreteStarAlgebra {
        &self.c1
    }

    pub fn e_projection(&self, t: usize) -> &CMatrix {
        &self.e_proj[t]
    }

    pub fn e_projections(&self) -> &[CMatrix] {
        &self.e_proj
    }

    pub fn witnesses(&self) -> &[Vec<CMatrix>] {
        &self.witnesses
    }

    /// α^A on C₁.
    pub fn action(&self) -> &ActionSystem {
        &self.action
    }

    pub fn action_alpha(&self, t: usize) -> &LinMap {
        self.action.map(t)
    }

    /// e_t = Σ ρ(x_i) e_A ρ(x_i)* for the given witness families.
    pub fn e_projections_with(&self, witnesses: &[Vec<CMatrix>]) -> Result<Vec<CMatrix>> {
        witnesses
            .iter()
            .map(|xs| {
                let mut e = CMatrix::zeros(self.d(), self.d());
                for x in xs {
                    let r = self.rho(x)?;
                    e += &r * &self.jones * r.adjoint();
                }
                Ok(e)
            })
            .collect()
    }

    /// A second witness family: u·(W-mixed witnesses) for a random unitary u ∈ A
    /// and a random unitary mixing W of each family.
    pub fn randomized_witnesses(&self, seed: u64) -> Result<Vec<Vec<CMatrix>>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = self.bundle.group();
        let ae = self.bundle.fiber(g.identity());
        let unit = self.bundle.unit()?.clone();
        let n = self.bundle.n();
        let mut out = Vec::new();
        for t in g.elements() {
            let coefs = crate::linalg::random_matrix(&mut rng, ae.dim(), 1);
            let h = ae.element(&coefs.column(0).into_owned());
            let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
            let (vals, vecs) = hermitian_eigen(&h);
            let expih = {
                let re = spectral_apply(&vals, &vecs, f64::cos);
                let im = spectral_apply(&vals, &vecs, f64::sin);
                re + im * C64::new(0.0, 1.0)
            };
            let u = expih - (identity(n) - &unit);
            let xs = &self.witnesses[t];
            let w = random_unitary(&mut rng, xs.len());
            let mixed: Vec<CMatrix> = (0..xs.len())
                .map(|k| {
                    let mut m = CMatrix::zeros(n, n);
                    for (j, x) in xs.iter().enumerate() {
                        m += x * w[(k, j)];
                    }
                    &u * m
                })
                .collect();
            out.push(mixed);
        }
        Ok(out)
    }

    /// Jones projection, quasi-basis, e_t and action invariants.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        match self.verify_inner(&mut r) {
            Ok(()) => {}
            Err(e) => r.fail("evaluation", JONES, e.to_string()),
        }
        r
    }

    fn verify_inner(&self, r: &mut Report) -> Result<()> {
        let g = self.bundle.group();
        let d = self.d();
        let e_a = &self.jones;
        let res = frob_norm(&(e_a * e_a - e_a)).max(frob_norm(&(e_a - e_a.adjoint())));
        r.check_residual("jones/projection", JONES, res, CHECK_TOL, "e_A = e_A* = e_A^2");
        let mut res = 0.0_f64;
        for c in self.bundle.total_space().basis() {
            let lhs = e_a * self.rho(c)? * e_a;
            let rhs = self.rho(&self.bundle.canonical_expectation(c)?)? * e_a;
            res = res.max(frob_norm(&(lhs - rhs)));
        }
        r.check_residual("jones/expectation", JONES, res, CHECK_TOL, "e_A c e_A = E(c) e_A");
        let qb = self.bundle.quasi_basis_and_index()?;
        let mut acc = CMatrix::zeros(d, d);
        for (c, cs) in &qb.pairs {
            acc += self.rho(c)? * e_a * self.rho(cs)?;
        }
        r.check_residual(
            "jones/quasi-basis-unit",
            JONES,
            frob_norm(&(acc - self.c1.unit())),
            CHECK_TOL,
            "sum rho(c_j) e_A rho(c_j*) = 1",
        );
        r.check_residual(
            "jones/c1-unit",
            JONES,
            frob_norm(&(self.c1.unit() - identity(d))),
            CHECK_TOL,
            "unit of C1 is the identity",
        );
        let de = self.bundle.fiber(g.identity()).dim();
        r.check(
            "jones/c1-dim",
            JONES,
            self.c1.dim() * de == d * d,
            format!("dim C1 = {}, (dim C)^2 / dim A = {}", self.c1.dim(), d * d / de.max(1)),
        );
        let mut sum = CMatrix::zeros(d, d);
        for t in g.elements() {
            let et = &self.e_proj[t];
            sum += et;
            let res = frob_norm(&(et * et - et)).max(frob_norm(&(et - et.adjoint())));
            r.check_residual(format!("e/{t}/projection"), EPROJ, res, CHECK_TOL, "");
            let mut comm = 0.0_f64;
            for a in self.bundle.fiber(g.identity()).basis() {
                let ra = self.rho(a)?;
                comm = comm.max(frob_norm(&(et * &ra - &ra * et)));
            }
            r.check_residual(format!("e/{t}/commutes"), EPROJ, comm, CHECK_TOL, "e_t in A'");
            let res = self.c1.space().relative_residual(et)?;
            r.check_residual(format!("e/{t}/in-c1"), EPROJ, res, CHECK_TOL, "e_t in C1");
            for s in g.elements() {
                if s != t {
                    let res = frob_norm(&(et * &self.e_proj[s]));
                    r.check_residual(format!("e/{t}/orthogonal/{s}"), EPROJ, res, CHECK_TOL, "");
                }
            }
        }
        r.check_residual("e/sum", EPROJ, frob_norm(&(sum - identity(d))), CHECK_TOL, "sum e_t = 1");
        r.check_residual(
            "e/identity",
            EPROJ,
            frob_norm(&(&self.e_proj[g.identity()] - e_a)),
            CHECK_TOL,
            "e_e = e_A",
        );
        for t in g.elements() {
            let a = self.action.map(t);
            let mut fix = 0.0_f64;
            for c in self.embedded.space().basis() {
                fix = fix.max(frob_norm(&(a.apply(c)? - c)));
            }
            r.check_residual(format!("action/{t}/fixes-c"), ACTION, fix, CHECK_TOL, "a_t(c) = c");
            let res = frob_norm(&(a.apply(e_a)? - &self.e_proj[g.inv(t)]));
            r.check_residual(format!("action/{t}/jones"), ACTION, res, CHECK_TOL, "a_t(e_A) = e_t^-1");
            r.check_residual(
                format!("action/{t}/well-defined"),
                ACTION,
                a.fit_residual(),
                CHECK_TOL,
                "linear extension consistent",
            );
        }
        r.merge("action", self.action.verify());
        Ok(())
    }
}

/// The bundle 𝒜₁ = {Y_t} with Y_t = e_A C₁ α_t(e_A), x•y = x α_t(y) and x^♯ = α_{t⁻¹}(x*).
#[derive(Debug, Clone)]
pub struct InducedBundle {
    fibers: Vec<MatSubspace>,
    action: ActionSystem,
}

impl InducedBundle {
    pub fn fiber(&self, t: usize) -> &MatSubspace {
        &self.fibers[t]
    }

    pub fn fibers(&self) -> &[MatSubspace] {
        &self.fibers
    }

    pub fn fiber_dims(&self) -> Vec<usize> {
        self.fibers.iter().map(|f| f.dim()).collect()
    }

    /// x • y for x ∈ Y_t.
    pub fn dot(&self, t: usize, x: &CMatrix, y: &CMatrix) -> Result<CMatrix> {
        Ok(x * self.action.apply(t, y)?)
    }

    /// x^♯ for x ∈ Y_t.
    pub fn sharp(&self, t: usize, x: &CMatrix) -> Result<CMatrix> {
        let g = self.action.group();
        self.action.apply(g.inv(t), &x.adjoint())
    }
}

/// 𝒜₁ together with ρ(𝒜), the copy of 𝒜 it is isomorphic to.
#[derive(Debug, Clone)]
pub struct A1Bundle {
    pub induced: InducedBundle,
    /// Fibers ρ(A_t) with plain matrix products.
    pub transported: GradedCStarBundle,
}

/// Build 𝒜₁ and verify that π_t(x) = e_A ρ(x) is an isomorphism 𝒜 → 𝒜₁.
pub fn bundle_a1_and_iso(r: &BasicConstructionResult) -> Result<(A1Bundle, Report)> {
    let b = r.bundle();
    let g = b.group().clone();
    let d = r.d();
    let tol = b.tol();
    let e_a = r.jones().clone();
    let c1b = r.c1().space().basis();
    let fibers = g
        .elements()
        .map(|t| {
            let et = r.e_projection(g.inv(t));
            let v: Vec<CMatrix> = c1b.iter().map(|c| &e_a * c * et).collect();
            MatSubspace::span(d, d, &v, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    let induced = InducedBundle {
        fibers,
        action: r.action().clone(),
    };
    let pi = |x: &CMatrix| -> Result<CMatrix> { Ok(&e_a * r.rho(x)?) };
    let mut rep = Report::new();

    for t in g.elements() {
        let images = b.fiber(t).basis().iter().map(pi).collect::<Result<Vec<_>>>()?;
        let img = MatSubspace::span(d, d, &images, tol)?;
        let res = induced.fibers[t].equality_residual(&img)?;
        rep.check_residual(format!("pi/{t}/onto"), ISO, res, tol, "pi_t(A_t) = Y_t");
        rep.check(
            format!("pi/{t}/injective"),
            ISO,
            img.dim() == b.fiber(t).dim(),
            format!("dim Y_t = {}, dim A_t = {}", img.dim(), b.fiber(t).dim()),
        );
    }

    // isometry on seeded random elements of each fiber
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for t in g.elements() {
        let f = b.fiber(t);
        let mut iso = 0.0_f64;
        let mut norm_id = 0.0_f64;
        for _ in 0..4 {
            if f.dim() == 0 {
                break;
            }
            let coefs = crate::linalg::random_matrix(&mut rng, f.dim(), 1);
            let x = f.element(&coefs.column(0).into_owned());
            let nx = op_norm(&x);
            let px = pi(&x)?;
            iso = iso.max((op_norm(&px) - nx).abs() / nx.max(f64::MIN_POSITIVE));
            let rhs = op_norm(&(&e_a * r.rho(&(&x * x.adjoint()))? * &e_a));
            norm_id = norm_id.max((op_norm(&px).powi(2) - rhs).abs() / nx.powi(2).max(f64::MIN_POSITIVE));
        }
        rep.check_residual(format!("pi/{t}/isometry"), ISO, iso, CHECK_TOL, "||pi_t(x)|| = ||x||");
        rep.check_residual(
            format!("pi/{t}/norm-identity"),
            ISO,
            norm_id,
            CHECK_TOL,
            "||pi_t(x)||^2 = ||e_A x x* e_A||",
        );
    }

    for t in g.elements() {
        let mut inv = 0.0_f64;
        for x in b.fiber(t).basis() {
            let lhs = induced.sharp(t, &pi(x)?)?;
            inv = inv.max(frob_norm(&(lhs - pi(&x.adjoint())?)));
        }
        rep.check_residual(format!("pi/{t}/involution"), ISO, inv, CHECK_TOL, "pi_t(x)# = pi_t^-1(x*)");
        for s in g.elements() {
            let mut mult = 0.0_f64;
            for x in b.fiber(t).basis() {
                let px = pi(x)?;
                for y in b.fiber(s).basis() {
                    let lhs = induced.dot(t, &px, &pi(y)?)?;
                    mult = mult.max(frob_norm(&(lhs - pi(&(x * y))?)));
                }
            }
            rep.check_residual(
                format!("pi/{t}/{s}/multiplicative"),
                ISO,
                mult,
                CHECK_TOL,
                "pi_t(x) . pi_s(y) = pi_ts(xy)",
            );
        }
    }

    // axioms of 𝒜₁ under its own operations
    let ye = &induced.fibers[g.identity()];
    for t in g.elements() {
        let yt = &induced.fibers[t];
        let sharp_imgs = yt.basis().iter().map(|x| induced.sharp(t, x)).collect::<Result<Vec<_>>>()?;
        let sharp_span = MatSubspace::span(d, d, &sharp_imgs, tol)?;
        let res = induced.fibers[g.inv(t)].equality_residual(&sharp_span)?;
        rep.check_residual(format!("a1/{t}/involution"), ISO, res, tol, "Y_t# = Y_t^-1");
        let mut sat = Vec::new();
        for x in yt.basis() {
            for y in &sharp_imgs {
                sat.push(induced.dot(t, x, y)?);
            }
        }
        let res = ye.equality_residual(&MatSubspace::span(d, d, &sat, tol)?)?;
        rep.check_residual(format!("a1/{t}/saturated"), ISO, res, tol, "span Y_t . Y_t# = Y_e");
        for s in g.elements() {
            let mut worst = 0.0_f64;
            let target = &induced.fibers[g.mul(t, s)];
            for x in yt.basis() {
                for y in induced.fibers[s].basis() {
                    worst = worst.max(target.relative_residual(&induced.dot(t, x, y)?)?);
                }
            }
            rep.check_residual(format!("a1/{t}/{s}/product"), ISO, worst, tol, "Y_t . Y_s in Y_ts");
        }
    }

    let sets: Vec<Vec<CMatrix>> = g
        .elements()
        .map(|t| b.fiber(t).basis().iter().map(|x| r.rho(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let transported = GradedCStarBundle::from_spanning_sets(g.clone(), d, &sets, tol)?;
    rep.merge("transported", transported.verify());
    rep.check("transported/saturated", ISO, transported.is_saturated() == b.is_saturated(), "");

    if !rep.passed() {
        return Err(Error::IsomorphismFailure(rep.failure_ids()));
    }
    Ok((
        A1Bundle {
            induced,
            transported,
        },
        rep,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::FiniteGroup;
    use crate::linalg::DEFAULT_TOL;

    fn z2() -> BasicConstructionResult {
        let b = catalog::group_algebra(&FiniteGroup::cyclic(2), DEFAULT_TOL).unwrap();
        BasicConstructionResult::build(&b).unwrap()
    }

    #[test]
    fn z2_basic_construction_shape() {
        let r = z2();
        assert_eq!(r.d(), 2);
        assert_eq!(r.c1().dim(), 4);
        let diag10 = CMatrix::from_diagonal(&CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]));
        assert!((r.jones() - diag10).norm() < 1e-12);
        let lam = catalog::regular_rep(&FiniteGroup::cyclic(2), 1);
        let rl = r.rho(&lam).unwrap();
        assert!((r.jones() * &rl * r.jones()).norm() < 1e-12);
        let eg = &rl * r.jones() * &rl;
        assert!((r.e_projection(1) - eg).norm() < 1e-12);
        assert!(r.verify().passed(), "{}", r.verify());
    }

    #[test]
    fn rho_is_a_star_homomorphism_and_invertible() {
        let b = catalog::pauli_bundle(DEFAULT_TOL).unwrap();
        let r = BasicConstructionResult::build(&b).unwrap();
        let basis = b.total_space().basis();
        for x in basis {
            let rx = r.rho(x).unwrap();
            assert!((r.rho(&x.adjoint()).unwrap() - rx.adjoint()).norm() < 1e-12);
            assert!((r.rho_inverse(&rx).unwrap() - x).norm() < 1e-12);
            for y in basis {
                assert!((r.rho(&(x * y)).unwrap() - &rx * r.rho(y).unwrap()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn action_is_involutive_on_z2() {
        let r = z2();
        let a = r.action_alpha(1);
        assert!(a.compose(a).distance(&LinMap::identity(r.c1().space())).unwrap() < 1e-10);
        assert!((a.apply(r.jones()).unwrap() - r.e_projection(1)).norm() < 1e-10);
    }

    #[test]
    fn witness_independence() {
        let b = catalog::m2_tensor_z2(DEFAULT_TOL).unwrap();
        let r = BasicConstructionResult::build(&b).unwrap();
        let w = r.randomized_witnesses(11).unwrap();
        let e2 = r.e_projections_with(&w).unwrap();
        for (a, b) in r.e_projections().iter().zip(&e2) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn induced_bundle_dims() {
        let r = z2();
        let (a1, rep) = bundle_a1_and_iso(&r).unwrap();
        assert!(rep.passed());
        assert_eq!(a1.induced.fiber_dims(), vec![1, 1]);
        let p = BasicConstructionResult::build(&catalog::pauli_bundle(DEFAULT_TOL).unwrap()).unwrap();
        let (a1, _) = bundle_a1_and_iso(&p).unwrap();
        assert_eq!(a1.induced.fiber_dims(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn unsaturated_bundle_is_rejected() {
        let b = GradedCStarBundle::from_spanning_sets(
            FiniteGroup::cyclic(2),
            2,
            &[vec![identity(2)], vec![]],
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(matches!(
            BasicConstructionResult::build(&b),
            Err(Error::NotSaturated)
        ));
    }

    #[test]
    fn standard_bundles_pass_all_checks() {
        for (name, b) in catalog::standard_bundles(DEFAULT_TOL).unwrap() {
            let r = BasicConstructionResult::build(&b).unwrap();
            let rep = r.verify();
            assert!(rep.passed(), "{name}: {rep}");
            let (_, rep) = bundle_a1_and_iso(&r).unwrap();
            assert!(rep.passed(), "{name}: {rep}");
        }
    }
}
