//! Recovering an equivalence bundle 𝒜 ~ ℬ^f from an equivalence bimodule Z
//! between the basic constructions C₁ and D₁ carrying a compatible G-action.
//!
//! Z_t = e_A·Z·β_t(e_B) with β_t = α^ℬ_{f(t)}. The fibers carry "diamond"
//! operations twisted by the actions; the map ψ_t(z) = Σ_r λ_r(z) untwists them
//! into plain matrix arithmetic over ρ_A(𝒜) and ρ_B(ℬ^f).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::basic_construction::BasicConstructionResult;
use crate::bimodule::{ConcreteBimodule, InclusionMoritaDatum};
use crate::bundle::GradedCStarBundle;
use crate::equivalence_bundle::{assemble_total, ActionSystem, BimoduleAction, EquivalenceBundle};
use crate::error::{Error, Result};
use crate::linalg::{frob_inner, frob_norm, identity, random_matrix, CMatrix, CHECK_TOL};
use crate::linmap::LinMap;
use crate::matspace::MatSubspace;
use crate::report::Report;
use crate::star_algebra::relative_commutant;

const ANCHOR: &str = "reconstruction";
const THEOREM: &str = "reconstruction-conclusion";

/// Everything the construction consumes: both basic constructions, the
/// candidate automorphism f and the action λ on Z (which carries Z itself).
#[derive(Debug, Clone)]
pub struct ReconstructionInput {
    pub bc_a: BasicConstructionResult,
    pub bc_b: BasicConstructionResult,
    pub f: Vec<usize>,
    pub lambda: BimoduleAction,
}

impl ReconstructionInput {
    /// β_t = α^ℬ_{f(t)}.
    pub fn beta(&self) -> Result<ActionSystem> {
        self.bc_b.action().compose_automorphism(&self.f)
    }

    pub fn z(&self) -> &ConcreteBimodule {
        self.lambda.bimodule()
    }
}

/// Output of [`build_z_bundle`].
#[derive(Debug, Clone)]
pub struct ReconstructedBundle {
    input: ReconstructionInput,
    beta: ActionSystem,
    z_fibers: Vec<MatSubspace>,
    equivalence: EquivalenceBundle,
    report: Report,
}

impl ReconstructedBundle {
    pub fn f(&self) -> &[usize] {
        &self.input.f
    }

    pub fn input(&self) -> &ReconstructionInput {
        &self.input
    }

    pub fn beta(&self) -> &ActionSystem {
        &self.beta
    }

    /// Z_t inside the rectangular ambient d_A × d_B.
    pub fn z_fiber(&self, t: usize) -> &MatSubspace {
        &self.z_fibers[t]
    }

    pub fn z_fibers(&self) -> &[MatSubspace] {
        &self.z_fibers
    }

    /// The untwisted equivalence bundle between ρ_A(𝒜) and ρ_B(ℬ^f).
    pub fn equivalence(&self) -> &EquivalenceBundle {
        &self.equivalence
    }

    /// Diamond-formula agreement, structural invariants and bundle axioms.
    pub fn report(&self) -> &Report {
        &self.report
    }

    pub fn total_datum(&self) -> Result<InclusionMoritaDatum> {
        assemble_total(&self.equivalence)
    }

    /// y ⋄ z = y·λ_s(z) for y ∈ Y^𝒜_s.
    pub fn diamond_left(&self, s: usize, y: &CMatrix, z: &CMatrix) -> Result<CMatrix> {
        Ok(y * self.input.lambda.apply(s, z)?)
    }

    /// z ⋄ y = z·β_t(y) for z ∈ Z_t.
    pub fn diamond_right(&self, t: usize, z: &CMatrix, y: &CMatrix) -> Result<CMatrix> {
        Ok(z * self.beta.apply(t, y)?)
    }

    /// Left inner product of z ∈ Z_t and w ∈ Z_s: z·λ_{ts⁻¹}(w)*.
    pub fn diamond_left_inner(&self, t: usize, s: usize, z: &CMatrix, w: &CMatrix) -> Result<CMatrix> {
        let g = self.beta.group();
        Ok(z * self.input.lambda.apply(g.mul(t, g.inv(s)), w)?.adjoint())
    }

    /// Right inner product of z ∈ Z_t and w ∈ Z_s: β_{t⁻¹}(z*·w).
    pub fn diamond_right_inner(&self, t: usize, z: &CMatrix, w: &CMatrix) -> Result<CMatrix> {
        let g = self.beta.group();
        self.beta.apply(g.inv(t), &(z.adjoint() * w))
    }

    /// ψ(z) = Σ_r λ_r(z).
    pub fn untwist(&self, z: &CMatrix) -> Result<CMatrix> {
        untwist(&self.input.lambda, z)
    }
}

fn untwist(lambda: &BimoduleAction, z: &CMatrix) -> Result<CMatrix> {
    let mut acc = CMatrix::zeros(z.nrows(), z.ncols());
    for r in lambda.group().elements() {
        acc += lambda.apply(r, z)?;
    }
    Ok(acc)
}

fn untwist_algebra(alpha: &ActionSystem, y: &CMatrix) -> Result<CMatrix> {
    let mut acc = CMatrix::zeros(y.nrows(), y.ncols());
    for r in alpha.group().elements() {
        acc += alpha.apply(r, y)?;
    }
    Ok(acc)
}

/// Y_t = e·ρ(A_t) for a basic construction.
fn y_fiber(bc: &BasicConstructionResult, t: usize) -> Result<MatSubspace> {
    let imgs = bc
        .bundle()
        .fiber(t)
        .basis()
        .iter()
        .map(|x| Ok(bc.jones() * bc.rho(x)?))
        .collect::<Result<Vec<_>>>()?;
    MatSubspace::span(bc.d(), bc.d(), &imgs, bc.bundle().tol())
}

fn transported(bc: &BasicConstructionResult) -> Result<GradedCStarBundle> {
    let b = bc.bundle();
    let sets = b
        .group()
        .elements()
        .map(|t| b.fiber(t).basis().iter().map(|x| bc.rho(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    GradedCStarBundle::from_spanning_sets(b.group().clone(), bc.d(), &sets, b.tol())
}

fn check_input(input: &ReconstructionInput, beta: &ActionSystem) -> Result<()> {
    let g = input.bc_a.bundle().group();
    if g != input.bc_b.bundle().group() {
        return Err(Error::CovarianceViolation("bundles are graded by different groups".into()));
    }
    let lam = &input.lambda;
    for t in g.elements() {
        let da = lam.left().map(t).distance(input.bc_a.action().map(t))?;
        let db = lam.right().map(t).distance(beta.map(t))?;
        if da > CHECK_TOL || db > CHECK_TOL {
            return Err(Error::CovarianceViolation(format!(
                "actions on Z do not match the basic constructions at t = {t}"
            )));
        }
    }
    let rep = lam.verify();
    if !rep.passed() {
        return Err(Error::CovarianceViolation(rep.failure_ids().join(", ")));
    }
    Ok(())
}

/// Build Z_t = e_A·Z·β_t(e_B) and the untwisted equivalence bundle.
pub fn build_z_bundle(input: ReconstructionInput) -> Result<ReconstructedBundle> {
    let ba = input.bc_a.bundle().clone();
    if !ba.is_saturated() || !input.bc_b.bundle().is_saturated() {
        return Err(Error::NotSaturated);
    }
    let g = ba.group().clone();
    if !g.is_automorphism(&input.f) {
        return Err(Error::NotAnAutomorphism);
    }
    let beta = input.beta()?;
    check_input(&input, &beta)?;
    let tol = ba.tol();
    let (da, db) = (input.bc_a.d(), input.bc_b.d());
    let e_a = input.bc_a.jones().clone();
    let e_b = input.bc_b.jones().clone();
    let zb = input.z().space().basis();
    let beta_e = g
        .elements()
        .map(|t| beta.apply(t, &e_b))
        .collect::<Result<Vec<_>>>()?;
    let z_fibers = g
        .elements()
        .map(|t| {
            let v: Vec<CMatrix> = zb.iter().map(|z| &e_a * z * &beta_e[t]).collect();
            MatSubspace::span(da, db, &v, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(t) = z_fibers.iter().position(|z| z.is_zero()) {
        return Err(Error::EmptyFiber(t));
    }
    let psi_fibers = z_fibers
        .iter()
        .map(|zt| {
            let v = zt
                .basis()
                .iter()
                .map(|z| untwist(&input.lambda, z))
                .collect::<Result<Vec<_>>>()?;
            MatSubspace::span(da, db, &v, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    let equivalence = EquivalenceBundle::new(
        transported(&input.bc_a)?,
        transported(&input.bc_b)?.relabel(&input.f)?,
        psi_fibers,
    )?;
    let mut rb = ReconstructedBundle {
        input,
        beta,
        z_fibers,
        equivalence,
        report: Report::new(),
    };
    let mut rep = Report::new();
    if let Err(e) = structural_checks(&rb, &beta_e, &mut rep) {
        rep.fail("evaluation", ANCHOR, e.to_string());
    }
    rep.merge("bundle", rb.equivalence.verify());
    match rb.total_datum() {
        Ok(d) => rep.merge("total", crate::bimodule::check_inclusion_morita(&d)),
        Err(e) => rep.fail("total", ANCHOR, e.to_string()),
    }
    // A' ∩ C is reported only; it is never one-dimensional for a non-trivial grading.
    let audit = ba
        .fiber_algebra()
        .and_then(|a| relative_commutant(&a, &ba.total_algebra()?));
    match audit {
        Ok(s) => rep.skip("audit/relative-commutant", ANCHOR, format!("dim(A' n C) = {}", s.dim())),
        Err(e) => rep.skip("audit/relative-commutant", ANCHOR, e.to_string()),
    }
    rb.report = rep;
    Ok(rb)
}

fn structural_checks(rb: &ReconstructedBundle, beta_e: &[CMatrix], rep: &mut Report) -> Result<()> {
    let input = &rb.input;
    let g = rb.beta.group().clone();
    let tol = input.bc_a.bundle().tol();
    let (da, db) = (input.bc_a.d(), input.bc_b.d());
    let e_a = input.bc_a.jones();
    let alpha_a = input.bc_a.action();
    let ya: Vec<MatSubspace> = g.elements().map(|t| y_fiber(&input.bc_a, t)).collect::<Result<_>>()?;
    // Y^ℬ_{β_s} = Y^ℬ_{f(s)}
    let yb: Vec<MatSubspace> = g
        .elements()
        .map(|s| y_fiber(&input.bc_b, input.f[s]))
        .collect::<Result<_>>()?;
    let psi = |z: &CMatrix| rb.untwist(z);

    let sum: CMatrix = beta_e.iter().sum();
    rep.check_residual(
        "beta-resolution",
        ANCHOR,
        frob_norm(&(sum - identity(db))),
        CHECK_TOL,
        "sum beta_t(e_B) = 1",
    );
    let w = MatSubspace::span_iter(da, db, rb.z_fibers.iter().flat_map(|z| z.basis().to_vec()), tol)?;
    let eaz = MatSubspace::span_iter(da, db, input.z().space().basis().iter().map(|z| e_a * z), tol)?;
    rep.check_residual("w-equals-eaz", ANCHOR, w.equality_residual(&eaz)?, tol, "sum Z_t = e_A Z");
    let total: usize = rb.z_fibers.iter().map(|z| z.dim()).sum();
    rep.check("w-direct", ANCHOR, total == w.dim(), format!("sum dim Z_t = {total}, dim W = {}", w.dim()));

    for t in g.elements() {
        for s in g.elements() {
            let (st, ts) = (g.mul(s, t), g.mul(t, s));
            let mut res_in = 0.0_f64;
            let mut res_psi = 0.0_f64;
            for y in ya[s].basis() {
                let py = untwist_algebra(alpha_a, y)?;
                for z in rb.z_fibers[t].basis() {
                    let d = rb.diamond_left(s, y, z)?;
                    res_in = res_in.max(rb.z_fibers[st].relative_residual(&d)?);
                    res_psi = res_psi.max(frob_norm(&(psi(&d)? - &py * psi(z)?)));
                }
            }
            rep.check_residual(format!("diamond/left-action/{s}/{t}"), ANCHOR, res_in.max(res_psi), CHECK_TOL, "Y_s . Z_t in Z_st");
            let mut res_in = 0.0_f64;
            let mut res_psi = 0.0_f64;
            for y in yb[s].basis() {
                let py = untwist_algebra(&rb.beta, y)?;
                for z in rb.z_fibers[t].basis() {
                    let d = rb.diamond_right(t, z, y)?;
                    res_in = res_in.max(rb.z_fibers[ts].relative_residual(&d)?);
                    res_psi = res_psi.max(frob_norm(&(psi(&d)? - psi(z)? * &py)));
                }
            }
            rep.check_residual(format!("diamond/right-action/{t}/{s}"), ANCHOR, res_in.max(res_psi), CHECK_TOL, "Z_t . Y_s in Z_ts");
            let tsi = g.mul(t, g.inv(s));
            let tis = g.mul(g.inv(t), s);
            let mut li = 0.0_f64;
            let mut ri = 0.0_f64;
            for x in rb.z_fibers[t].basis() {
                let px = psi(x)?;
                for y in rb.z_fibers[s].basis() {
                    let py = psi(y)?;
                    let l = rb.diamond_left_inner(t, s, x, y)?;
                    li = li
                        .max(ya[tsi].relative_residual(&l)?)
                        .max(frob_norm(&(untwist_algebra(alpha_a, &l)? - &px * py.adjoint())));
                    let r = rb.diamond_right_inner(t, x, y)?;
                    ri = ri
                        .max(yb[tis].relative_residual(&r)?)
                        .max(frob_norm(&(untwist_algebra(&rb.beta, &r)? - px.adjoint() * &py)));
                }
            }
            rep.check_residual(format!("diamond/left-inner/{t}/{s}"), ANCHOR, li, CHECK_TOL, "<Z_t, Z_s> in Y_ts^-1");
            rep.check_residual(format!("diamond/right-inner/{t}/{s}"), ANCHOR, ri, CHECK_TOL, "<Z_t, Z_s> in Y_t^-1s");
        }
    }

    // basis families built from the frames of Z and the quasi-basis of 𝒜
    let frame_r = input.z().right_frame()?;
    let frame_l = input.z().left_frame()?;
    let us: Vec<CMatrix> = frame_r
        .iter()
        .flat_map(|z| beta_e.iter().map(move |b| e_a * z * b))
        .collect();
    let qb = input.bc_a.bundle().quasi_basis_and_index()?;
    let mut vs = Vec::new();
    for (_, cs) in &qb.pairs {
        let rc = input.bc_a.rho(cs)?;
        for w in &frame_l {
            vs.push(e_a * &rc * w);
        }
    }
    let mut lb = 0.0_f64;
    let mut rbres = 0.0_f64;
    for x in w.basis() {
        let mut l = CMatrix::zeros(da, db);
        for u in &us {
            l += u * (u.adjoint() * x);
        }
        lb = lb.max(frob_norm(&(l - x)));
        let mut r = CMatrix::zeros(da, db);
        for v in &vs {
            r += (x * v.adjoint()) * v;
        }
        rbres = rbres.max(frob_norm(&(r - x)));
    }
    let inside = us
        .iter()
        .chain(&vs)
        .map(|u| w.relative_residual(u))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0_f64, f64::max);
    rep.check_residual("basis/families-in-w", ANCHOR, inside, tol, "u_i, v_j in W");
    rep.check_residual("basis/left", ANCHOR, lb, CHECK_TOL, "sum u_i (u_i* x) = x");
    rep.check_residual("basis/right", ANCHOR, rbres, CHECK_TOL, "sum (x v_j*) v_j = x");

    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    let mut compat = 0.0_f64;
    for _ in 0..8 {
        let pick = |rng: &mut ChaCha8Rng| w.element(&random_matrix(rng, w.dim(), 1).column(0).into_owned());
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        compat = compat.max(frob_norm(&((&x * y.adjoint()) * &z - &x * (y.adjoint() * &z))));
    }
    rep.check_residual("compatible-inner-products", ANCHOR, compat, CHECK_TOL, "(x y*) z = x (y* z)");
    Ok(())
}

/// span ₗ⟨Z_t, Z_s⟩ = A_{ts⁻¹} and span ⟨Z_t, Z_s⟩ᵣ = B_{f(t⁻¹s)}, read through ρ.
pub fn verify_theorem_conclusion(rb: &ReconstructedBundle, f: &[usize]) -> Report {
    let mut r = Report::new();
    if let Err(e) = theorem_inner(rb, f, &mut r) {
        r.fail("evaluation", THEOREM, e.to_string());
    }
    r
}

fn theorem_inner(rb: &ReconstructedBundle, f: &[usize], r: &mut Report) -> Result<()> {
    let g = rb.beta.group().clone();
    if f.len() != g.order() {
        return Err(Error::NotAnAutomorphism);
    }
    let bc_a = &rb.input.bc_a;
    let bc_b = &rb.input.bc_b;
    let tol = bc_a.bundle().tol();
    let (da, db) = (bc_a.d(), bc_b.d());
    for t in g.elements() {
        for s in g.elements() {
            let zt = rb.z_fibers[t].basis();
            let zs = rb.z_fibers[s].basis();
            let mut left = Vec::new();
            let mut right = Vec::new();
            for x in zt {
                for y in zs {
                    left.push(rb.diamond_left_inner(t, s, x, y)?);
                    right.push(rb.diamond_right_inner(t, x, y)?);
                }
            }
            let tsi = g.mul(t, g.inv(s));
            let tis = g.mul(g.inv(t), s);
            let l = MatSubspace::span(da, da, &left, tol)?;
            let res = l.equality_residual(&y_fiber(bc_a, tsi)?)?;
            r.check_residual(format!("left/{t}/{s}"), THEOREM, res, tol, format!("span <Z_t, Z_s> = A_{tsi}"));
            let rr = MatSubspace::span(db, db, &right, tol)?;
            let res = rr.equality_residual(&y_fiber(bc_b, f[tis])?)?;
            r.check_residual(format!("right/{t}/{s}"), THEOREM, res, tol, format!("span <Z_t, Z_s> = B_{}", f[tis]));
        }
    }
    Ok(())
}

/// Callback producing the action λ (and with it Z) for a candidate f.
pub type ZFactory<'a> =
    dyn Fn(&BasicConstructionResult, &BasicConstructionResult, &[usize]) -> Result<BimoduleAction> + Sync + 'a;

/// The first automorphism f, in the order of [`crate::group::FiniteGroup::automorphisms`],
/// for which the factory's (Z, λ) yields a verified bundle.
pub fn search_automorphism(
    a: &GradedCStarBundle,
    b: &GradedCStarBundle,
    factory: &ZFactory<'_>,
) -> Result<(Vec<usize>, ReconstructedBundle)> {
    if !a.is_saturated() || !b.is_saturated() {
        return Err(Error::NotSaturated);
    }
    if a.group() != b.group() {
        return Err(Error::NoAutomorphismFound { tried: 0 });
    }
    let bc_a = BasicConstructionResult::build(a)?;
    let bc_b = BasicConstructionResult::build(b)?;
    let candidates = a.group().automorphisms();
    let tried = candidates.len();
    let attempt = |f: &Vec<usize>| -> Option<ReconstructedBundle> {
        let lambda = factory(&bc_a, &bc_b, f).ok()?;
        let rb = build_z_bundle(ReconstructionInput {
            bc_a: bc_a.clone(),
            bc_b: bc_b.clone(),
            f: f.clone(),
            lambda,
        })
        .ok()?;
        (rb.report().passed() && verify_theorem_conclusion(&rb, f).passed()).then_some(rb)
    };
    let results: Vec<Option<ReconstructedBundle>> = candidates.par_iter().map(attempt).collect();
    candidates
        .into_iter()
        .zip(results)
        .find_map(|(f, rb)| rb.map(|rb| (f, rb)))
        .ok_or(Error::NoAutomorphismFound { tried })
}

/// Z = C₁·J·D₁ with J the overlap of the two GNS bases, and
/// λ_t(c·J·d) = α^𝒜_t(c)·J·β_t(d).
pub fn overlap_factory(
    bc_a: &BasicConstructionResult,
    bc_b: &BasicConstructionResult,
    f: &[usize],
) -> Result<BimoduleAction> {
    let (da, db) = (bc_a.d(), bc_b.d());
    let tol = bc_a.bundle().tol();
    let j = if da == db && bc_a.bundle().n() == bc_b.bundle().n() {
        CMatrix::from_fn(da, db, |k, l| frob_inner(&bc_a.gns_basis()[k], &bc_b.gns_basis()[l]))
    } else {
        CMatrix::identity(da, db)
    };
    let beta = bc_b.action().compose_automorphism(f)?;
    let j = &j;
    let cb = bc_a.c1().space().basis();
    let db_basis = bc_b.c1().space().basis();
    let products: Vec<(CMatrix, CMatrix, CMatrix)> = cb
        .iter()
        .flat_map(|c| db_basis.iter().map(move |d| (c.clone(), c * j * d, d.clone())))
        .collect();
    let space = MatSubspace::span_iter(da, db, products.iter().map(|(_, m, _)| m.clone()), tol)?;
    let z = ConcreteBimodule::new(bc_a.c1().clone(), bc_b.c1().clone(), space.clone())?;
    let g = bc_a.bundle().group();
    let maps = g
        .elements()
        .map(|t| {
            let pairs = products
                .iter()
                .map(|(c, m, d)| Ok((m.clone(), bc_a.action().apply(t, c)? * j * beta.apply(t, d)?)))
                .collect::<Result<Vec<_>>>()?;
            LinMap::fit(&space, &space, &pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    BimoduleAction::new(z, maps, bc_a.action().clone(), beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::FiniteGroup;
    use crate::linalg::DEFAULT_TOL;

    fn trivial_input(g: &FiniteGroup) -> ReconstructionInput {
        let b = catalog::group_algebra(g, DEFAULT_TOL).unwrap();
        let bc = BasicConstructionResult::build(&b).unwrap();
        let f: Vec<usize> = g.elements().collect();
        let lambda = overlap_factory(&bc, &bc, &f).unwrap();
        ReconstructionInput {
            bc_a: bc.clone(),
            bc_b: bc,
            f,
            lambda,
        }
    }

    #[test]
    fn trivial_roundtrip_recovers_a1() {
        let g = FiniteGroup::cyclic(3);
        let input = trivial_input(&g);
        let rb = build_z_bundle(input.clone()).unwrap();
        assert!(rb.report().passed(), "{}", rb.report());
        assert!(verify_theorem_conclusion(&rb, rb.f()).passed());
        for t in g.elements() {
            let y = y_fiber(&input.bc_a, t).unwrap();
            assert!(rb.z_fiber(t).equals(&y).unwrap());
        }
    }

    #[test]
    fn untwisted_fibers_match_the_algebra() {
        let g = FiniteGroup::cyclic(2);
        let input = trivial_input(&g);
        let rb = build_z_bundle(input.clone()).unwrap();
        let ta = transported(&input.bc_a).unwrap();
        for t in g.elements() {
            assert!(rb.equivalence().fiber(t).equals(ta.fiber(t)).unwrap());
        }
    }

    #[test]
    fn wrong_f_fails_conclusion() {
        let g = FiniteGroup::cyclic(4);
        let a = catalog::group_algebra(&g, DEFAULT_TOL).unwrap();
        let inv = g.inversion();
        let b = a.relabel(&inv).unwrap();
        let (f, rb) = search_automorphism(&a, &b, &overlap_factory).unwrap();
        assert_eq!(f, inv);
        let id: Vec<usize> = g.elements().collect();
        assert!(!verify_theorem_conclusion(&rb, &id).passed());
    }

    #[test]
    fn mismatched_pair_has_no_automorphism() {
        let a = catalog::group_algebra(&FiniteGroup::cyclic(2), DEFAULT_TOL).unwrap();
        let b = catalog::pauli_z2_regrading(DEFAULT_TOL).unwrap();
        assert!(matches!(
            search_automorphism(&a, &b, &overlap_factory),
            Err(Error::NoAutomorphismFound { tried: 1 })
        ));
    }

    #[test]
    fn trivial_group_passes_vacuously() {
        let input = trivial_input(&FiniteGroup::cyclic(1));
        let rb = build_z_bundle(input).unwrap();
        let r = verify_theorem_conclusion(&rb, &[0]);
        assert!(r.passed());
        assert_eq!(r.filtered("left").len(), 1);
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let mut input = trivial_input(&FiniteGroup::cyclic(3));
        input.f = vec![0, 0, 0];
        assert!(matches!(build_z_bundle(input), Err(Error::NotAnAutomorphism)));
    }

    #[test]
    fn broken_action_is_a_covariance_violation() {
        let g = FiniteGroup::cyclic(2);
        let input = trivial_input(&g);
        let sp = input.z().space().clone();
        let maps = vec![LinMap::identity(&sp); 2];
        let lambda = BimoduleAction::new(
            input.z().clone(),
            maps,
            input.bc_a.action().clone(),
            input.beta().unwrap(),
        )
        .unwrap();
        let bad = ReconstructionInput { lambda, ..input };
        assert!(matches!(build_z_bundle(bad), Err(Error::CovarianceViolation(_))));
    }
}
