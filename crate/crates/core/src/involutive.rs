//! Involutive Hilbert bimodules, their linking algebras C_X, the matching
//! Z₂-graded bundles, transport along equivalence bimodules and the C_X–C_Y
//! equivalence bimodule C_M.
//!
//! Tensor products are realized as product spans and the dual x̃ as x*.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bimodule::{check_inclusion_morita, ConcreteBimodule, InclusionMoritaDatum};
use crate::bundle::GradedCStarBundle;
use crate::equivalence_bundle::{assemble_total, EquivalenceBundle};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{frob_norm, random_unitary, CMatrix, RMatrix, C64, CHECK_TOL};
use crate::linmap::{FitFailure, LinMap, RealLinMap};
use crate::matspace::MatSubspace;
use crate::report::Report;
use crate::star_algebra::{relative_commutant, ConcreteStarAlgebra};

const ANCHOR: &str = "involutive-bimodule";
const LINKING: &str = "linking-algebra";
const PSI: &str = "psi-theta";
const CM: &str = "c-m";
const THEOREM: &str = "involutive-morita";

/// [[tl, tr], [bl, br]].
pub fn block2(tl: &CMatrix, tr: &CMatrix, bl: &CMatrix, br: &CMatrix) -> CMatrix {
    let (r, c) = tl.shape();
    let mut m = CMatrix::zeros(2 * r, 2 * c);
    m.view_mut((0, 0), (r, c)).copy_from(tl);
    m.view_mut((0, c), (r, c)).copy_from(tr);
    m.view_mut((r, 0), (r, c)).copy_from(bl);
    m.view_mut((r, c), (r, c)).copy_from(br);
    m
}

fn diag2(a: &CMatrix) -> CMatrix {
    let z = CMatrix::zeros(a.nrows(), a.ncols());
    block2(a, &z, &z, a)
}

fn offdiag(x: &CMatrix, y: &CMatrix) -> CMatrix {
    let z = CMatrix::zeros(x.nrows(), x.ncols());
    block2(&z, x, y, &z)
}

fn real_map(space: &MatSubspace, f: impl Fn(&CMatrix) -> CMatrix) -> Result<RealLinMap> {
    if space.dim() == 0 {
        return RealLinMap::from_matrix(space.clone(), space.clone(), RMatrix::zeros(0, 0));
    }
    RealLinMap::from_fn(space, space, f)
}

/// An A–A bimodule X with a conjugate-linear map ♮ stored over realified coordinates.
#[derive(Debug, Clone)]
pub struct InvolutiveBimodule {
    base: ConcreteBimodule,
    natural: RealLinMap,
}

impl InvolutiveBimodule {
    pub fn new(base: ConcreteBimodule, natural: RealLinMap) -> Result<Self> {
        if !base.left().same_as(base.right()) {
            return Err(Error::MiddleAlgebraMismatch);
        }
        let d = base.space().dim();
        if natural.dom().dim() != d || natural.cod().dim() != d {
            return Err(Error::ShapeMismatch {
                expected: (2 * d, 2 * d),
                found: natural.matrix().shape(),
            });
        }
        Ok(Self { base, natural })
    }

    pub fn from_fn(base: ConcreteBimodule, f: impl Fn(&CMatrix) -> CMatrix) -> Result<Self> {
        let natural = real_map(base.space(), f)?;
        Self::new(base, natural)
    }

    /// x^♮ = x*.
    pub fn adjoint(base: ConcreteBimodule) -> Result<Self> {
        Self::from_fn(base, |x| x.adjoint())
    }

    /// x^♮ = ω·x*.
    pub fn phase_adjoint(base: ConcreteBimodule, phase: C64) -> Result<Self> {
        Self::from_fn(base, move |x| x.adjoint() * phase)
    }

    /// x^♮ = xᵀ, which is not conjugate-linear.
    pub fn transpose(base: ConcreteBimodule) -> Result<Self> {
        Self::from_fn(base, |x| x.transpose())
    }

    /// An algebra over itself with ♮ = *.
    pub fn trivial(a: &ConcreteStarAlgebra) -> Result<Self> {
        Self::adjoint(ConcreteBimodule::identity(a))
    }

    pub fn base(&self) -> &ConcreteBimodule {
        &self.base
    }

    pub fn algebra(&self) -> &ConcreteStarAlgebra {
        self.base.left()
    }

    pub fn space(&self) -> &MatSubspace {
        self.base.space()
    }

    pub fn natural(&self) -> &RealLinMap {
        &self.natural
    }

    pub fn tol(&self) -> f64 {
        self.base.tol()
    }

    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        self.natural.apply(x)
    }

    pub fn is_full(&self) -> bool {
        self.base.is_full()
    }

    /// Conjugate-linearity of ♮ and its three defining conditions.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        r.merge("base", self.base.verify(false));
        r.check_residual(
            "conjugate-linear",
            ANCHOR,
            self.natural.conjugate_linearity_defect(),
            CHECK_TOL,
            "x^nat(c x) = conj(c) x^nat",
        );
        if let Err(e) = self.verify_conditions(&mut r) {
            r.fail("evaluation", ANCHOR, e.to_string());
        }
        r
    }

    fn verify_conditions(&self, r: &mut Report) -> Result<()> {
        let xs = self.space().real_basis();
        // real bases on both sides: a real basis of A hides failures of (2) for real-linear maps
        let ab = self.algebra().space().real_basis();
        let nat: Vec<CMatrix> = xs.iter().map(|x| self.apply(x)).collect::<Result<_>>()?;
        let mut inv = 0.0_f64;
        for (x, nx) in xs.iter().zip(&nat) {
            inv = inv.max(frob_norm(&(self.apply(nx)? - x)));
        }
        r.check_residual("involutive", ANCHOR, inv, CHECK_TOL, "(x^nat)^nat = x");
        let mut bim = 0.0_f64;
        for (x, nx) in xs.iter().zip(&nat) {
            for a in &ab {
                for b in &ab {
                    let lhs = self.apply(&(a * x * b))?;
                    bim = bim.max(frob_norm(&(lhs - b.adjoint() * nx * a.adjoint())));
                }
            }
        }
        r.check_residual("bimodule", ANCHOR, bim, CHECK_TOL, "(a x b)^nat = b* x^nat a*");
        let mut inner = 0.0_f64;
        for (x, nx) in xs.iter().zip(&nat) {
            for (y, ny) in xs.iter().zip(&nat) {
                inner = inner.max(frob_norm(&(x * ny.adjoint() - nx.adjoint() * y)));
            }
        }
        r.check_residual("inner-product", ANCHOR, inner, CHECK_TOL, "x (y^nat)* = (x^nat)* y");
        Ok(())
    }

    /// X̃ realized as X* with (x*)^♮ = (x^♮)*.
    pub fn dual(&self) -> Result<Self> {
        let base = self.base.dual();
        let nat = |w: &CMatrix| -> CMatrix {
            self.apply(&w.adjoint())
                .map(|v| v.adjoint())
                .unwrap_or_else(|_| w.map(|_| C64::new(f64::NAN, 0.0)))
        };
        Self::from_fn(base, nat)
    }
}

/// C_X together with its Z₂-grading 𝒜_X.
#[derive(Debug, Clone)]
pub struct LinkingSystem {
    x: InvolutiveBimodule,
    cx: ConcreteStarAlgebra,
    bundle: GradedCStarBundle,
    corner: ConcreteStarAlgebra,
}

impl LinkingSystem {
    pub fn involutive(&self) -> &InvolutiveBimodule {
        &self.x
    }

    pub fn cx(&self) -> &ConcreteStarAlgebra {
        &self.cx
    }

    pub fn bundle(&self) -> &GradedCStarBundle {
        &self.bundle
    }

    /// {diag(a, a)}, the copy of A inside C_X.
    pub fn corner(&self) -> &ConcreteStarAlgebra {
        &self.corner
    }

    pub fn embed0(&self, a: &CMatrix) -> CMatrix {
        diag2(a)
    }

    /// [[0, x], [(x^♮)*, 0]].
    pub fn embed1(&self, x: &CMatrix) -> Result<CMatrix> {
        Ok(offdiag(x, &self.x.apply(x)?.adjoint()))
    }

    /// Bundle axioms, the blockwise product rule and saturation against fullness.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        r.merge("bundle", self.bundle.verify());
        let xb = self.x.space().basis();
        let n = self.x.algebra().n();
        let mut worst = 0.0_f64;
        let mut inside = 0.0_f64;
        let eval = (|| -> Result<()> {
            for x in xb {
                let ex = self.embed1(x)?;
                for y in xb {
                    let p = &ex * self.embed1(y)?;
                    let dot = x * self.x.apply(y)?.adjoint();
                    let tl = p.view((0, 0), (n, n)).into_owned();
                    let br = p.view((n, n), (n, n)).into_owned();
                    worst = worst.max(frob_norm(&(tl - &dot))).max(frob_norm(&(br - &dot)));
                    worst = worst.max(frob_norm(&p.view((0, n), (n, n)).into_owned()));
                    inside = inside.max(self.x.algebra().space().relative_residual(&dot)?);
                }
            }
            Ok(())
        })();
        if let Err(e) = eval {
            r.fail("evaluation", LINKING, e.to_string());
        }
        r.check_residual("corner-product", LINKING, worst, CHECK_TOL, "x . y = x (y^nat)* in both corners");
        r.check_residual("corner-in-a", LINKING, inside, self.x.tol(), "x (y^nat)* in A");
        let sat = self.bundle.is_saturated();
        let full = self.x.is_full();
        r.check(
            "saturated-iff-full",
            LINKING,
            sat == full,
            format!("saturated = {sat}, full = {full}"),
        );
        r
    }
}

/// C_X = {[[a, x], [(x^♮)*, a]]} and its grading A₀ = {diag(a, a)}, A₁ = {offdiag(x, (x^♮)*)}.
pub fn linking_and_bundle(x: &InvolutiveBimodule) -> Result<LinkingSystem> {
    let rep = x.verify();
    if !rep.passed() {
        return Err(Error::ClosureFailure(rep.failure_ids().join(", ")));
    }
    let n = x.algebra().n();
    let tol = x.tol();
    let a0: Vec<CMatrix> = x.algebra().space().basis().iter().map(diag2).collect();
    let a1: Vec<CMatrix> = x
        .space()
        .basis()
        .iter()
        .map(|v| Ok(offdiag(v, &x.apply(v)?.adjoint())))
        .collect::<Result<_>>()?;
    let bundle = GradedCStarBundle::from_spanning_sets(FiniteGroup::cyclic(2), 2 * n, &[a0.clone(), a1.clone()], tol)?;
    let rep = bundle.verify();
    if !rep.passed() {
        return Err(Error::ClosureFailure(rep.failure_ids().join(", ")));
    }
    let all: Vec<CMatrix> = a0.iter().chain(&a1).cloned().collect();
    let cx = ConcreteStarAlgebra::from_space(MatSubspace::span(2 * n, 2 * n, &all, tol)?)?;
    let corner = ConcreteStarAlgebra::from_space(MatSubspace::span(2 * n, 2 * n, &a0, tol)?)?;
    Ok(LinkingSystem {
        x: x.clone(),
        cx,
        bundle,
        corner,
    })
}

/// X = A₁ over A₀ with ♮ the bundle involution.
pub fn bundle_to_involutive(b: &GradedCStarBundle) -> Result<InvolutiveBimodule> {
    let g = b.group();
    if g.order() != 2 {
        return Err(Error::WrongGroup(g.order()));
    }
    let odd = g.elements().find(|&t| t != g.identity()).expect("order two");
    let a = b.fiber_algebra()?;
    let base = ConcreteBimodule::new(a.clone(), a, b.fiber(odd).clone())?;
    InvolutiveBimodule::adjoint(base)
}

/// M̃ ⊗ X ⊗ M as span{m*·x·n} with (m*·x·n)^♮ = n*·x^♮·m.
pub fn transport(m: &ConcreteBimodule, x: &InvolutiveBimodule) -> Result<InvolutiveBimodule> {
    if !m.left().same_as(x.algebra()) {
        return Err(Error::MiddleAlgebraMismatch);
    }
    if !m.is_full() {
        return Err(Error::NotAnEquivalenceBimodule("M is not full on both sides".into()));
    }
    let k = m.right().n();
    let tol = x.tol();
    let mb = m.space().basis();
    let xs = x.space().real_basis();
    let mut pairs = Vec::new();
    for p in mb {
        for v in &xs {
            let nv = x.apply(v)?;
            for q in mb {
                pairs.push((p.adjoint() * v * q, q.adjoint() * &nv * p));
            }
        }
    }
    let space = MatSubspace::span_iter(k, k, pairs.iter().map(|(s, _)| s.clone()), tol)?;
    let base = ConcreteBimodule::new(m.right().clone(), m.right().clone(), space.clone())?;
    let natural = if space.dim() == 0 {
        RealLinMap::from_matrix(space.clone(), space.clone(), RMatrix::zeros(0, 0))?
    } else {
        RealLinMap::try_fit(&space, &space, &pairs).map_err(|e| match e {
            FitFailure::Inconsistent { residual } => Error::IllDefinedInvolution { residual },
            FitFailure::Underdetermined { .. } => Error::IllDefinedInvolution { residual: f64::INFINITY },
        })?
    };
    InvolutiveBimodule::new(base, natural)
}

/// Checks that φ: T → Y is a bijective bimodule map preserving both inner products and ♮.
pub fn check_isomorphism(t: &InvolutiveBimodule, y: &InvolutiveBimodule, phi: &LinMap) -> Report {
    let mut r = Report::new();
    if let Err(e) = iso_inner(t, y, phi, &mut r) {
        r.fail("evaluation", PSI, e.to_string());
    }
    r
}

fn iso_inner(t: &InvolutiveBimodule, y: &InvolutiveBimodule, phi: &LinMap, r: &mut Report) -> Result<()> {
    let onto = phi.dom().equality_residual(t.space())?.max(phi.cod().equality_residual(y.space())?);
    r.check_residual("spaces", PSI, onto, t.tol(), "phi: T -> Y");
    r.check("bijective", PSI, phi.is_invertible(), "");
    let tb = t.space().basis();
    let imgs: Vec<CMatrix> = tb.iter().map(|s| phi.apply(s)).collect::<Result<_>>()?;
    let (mut li, mut ri) = (0.0_f64, 0.0_f64);
    for (s, ps) in tb.iter().zip(&imgs) {
        for (u, pu) in tb.iter().zip(&imgs) {
            li = li.max(frob_norm(&(ps * pu.adjoint() - s * u.adjoint())));
            ri = ri.max(frob_norm(&(ps.adjoint() * pu - s.adjoint() * u)));
        }
    }
    r.check_residual("left-inner", PSI, li, CHECK_TOL, "phi(s) phi(u)* = s u*");
    r.check_residual("right-inner", PSI, ri, CHECK_TOL, "phi(s)* phi(u) = s* u");
    let bb = t.algebra().space().basis();
    let mut bim = 0.0_f64;
    for (s, ps) in tb.iter().zip(&imgs) {
        for a in bb {
            for b in bb {
                bim = bim.max(frob_norm(&(phi.apply(&(a * s * b))? - a * ps * b)));
            }
        }
    }
    r.check_residual("bimodule", PSI, bim, CHECK_TOL, "phi(a s b) = a phi(s) b");
    let mut nat = 0.0_f64;
    for s in tb {
        nat = nat.max(frob_norm(&(phi.apply(&t.apply(s)?)? - y.apply(&phi.apply(s)?)?)));
    }
    r.check_residual("involution", PSI, nat, CHECK_TOL, "phi(s^nat) = phi(s)^nat");
    Ok(())
}

/// Ψ(w) = Σ u_i φ(u_i*·w) on span(X·M) for a frame Σ u_i u_i* = 1_A.
fn psi_map(
    dom: &MatSubspace,
    cod: &MatSubspace,
    frame: &[CMatrix],
    phi: &impl Fn(&CMatrix) -> Result<CMatrix>,
) -> Result<LinMap> {
    let pairs = dom
        .basis()
        .iter()
        .map(|w| {
            let mut acc = CMatrix::zeros(w.nrows(), w.ncols());
            for u in frame {
                acc += u * phi(&(u.adjoint() * w))?;
            }
            Ok((w.clone(), acc))
        })
        .collect::<Result<Vec<_>>>()?;
    LinMap::fit(dom, cod, &pairs)
}

/// Θ(m·y) = m·φ⁻¹(y), fitted on the products.
fn theta_map(
    m: &ConcreteBimodule,
    ys: &[CMatrix],
    dom: &MatSubspace,
    cod: &MatSubspace,
    phi_inv: &impl Fn(&CMatrix) -> Result<CMatrix>,
) -> Result<LinMap> {
    let mut pairs = Vec::new();
    for p in m.space().basis() {
        for y in ys {
            pairs.push((p * y, p * phi_inv(y)?));
        }
    }
    LinMap::fit(dom, cod, &pairs)
}

fn psi_block(
    r: &mut Report,
    prefix: &str,
    m: &ConcreteBimodule,
    x_space: &MatSubspace,
    y_space: &MatSubspace,
    phi: &impl Fn(&CMatrix) -> Result<CMatrix>,
    phi_inv: &impl Fn(&CMatrix) -> Result<CMatrix>,
    frames: (&[CMatrix], &[CMatrix]),
) -> Result<()> {
    let tol = m.tol();
    let xm = x_space.product_span(m.space())?;
    let my = m.space().product_span(y_space)?;
    let psi = psi_map(&xm, &my, frames.0, phi)?;
    r.check(format!("{prefix}psi/bijective"), PSI, psi.is_invertible() && xm.dim() == my.dim(), format!("dim XM = {}, dim MY = {}", xm.dim(), my.dim()));
    r.check_residual(format!("{prefix}psi/well-defined"), PSI, psi.fit_residual(), CHECK_TOL, "");
    let (mut li, mut ri) = (0.0_f64, 0.0_f64);
    for w in xm.basis() {
        let pw = psi.apply(w)?;
        for v in xm.basis() {
            let pv = psi.apply(v)?;
            li = li.max(frob_norm(&(&pw * pv.adjoint() - w * v.adjoint())));
            ri = ri.max(frob_norm(&(pw.adjoint() * &pv - w.adjoint() * v)));
        }
    }
    r.check_residual(format!("{prefix}psi/left-inner"), PSI, li, CHECK_TOL, "A-valued inner product preserved");
    r.check_residual(format!("{prefix}psi/right-inner"), PSI, ri, CHECK_TOL, "B-valued inner product preserved");
    match theta_map(m, y_space.basis(), &my, &xm, phi_inv) {
        Ok(theta) => {
            let tp = theta.compose(&psi).distance(&LinMap::identity(&xm))?;
            let pt = psi.compose(&theta).distance(&LinMap::identity(&my))?;
            r.check_residual(format!("{prefix}theta/after-psi"), PSI, tp, CHECK_TOL, "Theta Psi = id");
            r.check_residual(format!("{prefix}psi/after-theta"), PSI, pt, CHECK_TOL, "Psi Theta = id");
        }
        Err(e) => r.fail(format!("{prefix}theta/well-defined"), PSI, e.to_string()),
    }
    let psi2 = psi_map(&xm, &my, frames.1, phi)?;
    r.check_residual(
        format!("{prefix}psi/frame-independent"),
        PSI,
        psi.distance(&psi2)?,
        CHECK_TOL.max(tol),
        "same Psi for a second frame",
    );
    Ok(())
}

/// A second frame: a random unitary mix of `u` padded with a zero element.
fn second_frame(u: &[CMatrix], seed: u64) -> Vec<CMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = u.len() + 1;
    let w = random_unitary(&mut rng, k);
    let zero = CMatrix::zeros(u[0].nrows(), u[0].ncols());
    let padded: Vec<&CMatrix> = u.iter().chain(std::iter::once(&zero)).collect();
    (0..k)
        .map(|i| {
            let mut acc = zero.clone();
            for (j, p) in padded.iter().enumerate() {
                acc += *p * w[(i, j)];
            }
            acc
        })
        .collect()
}

/// Ψ, Θ and their dual versions for a claimed involutive isomorphism φ: M̃⊗X⊗M → Y.
pub fn psi_theta_check(
    m: &ConcreteBimodule,
    x: &InvolutiveBimodule,
    y: &InvolutiveBimodule,
    phi: &LinMap,
) -> Result<Report> {
    let t = transport(m, x)?;
    let iso = check_isomorphism(&t, y, phi);
    if !iso.passed() {
        return Err(Error::NotAnInvolutiveIsomorphism(iso.failure_ids()));
    }
    let mut r = Report::new();
    r.merge("phi", iso);
    let frame = m.right_frame()?;
    let frame2 = second_frame(&frame, 0x9e3779b9);
    let phi_inv = phi.inverse()?;
    let f = |w: &CMatrix| phi.apply(w);
    let fi = |w: &CMatrix| phi_inv.apply(w);
    psi_block(&mut r, "", m, x.space(), y.space(), &f, &fi, (&frame, &frame2))?;

    // Φ̃(w) = Φ(w*)* on M̃⊗X̃⊗M
    let td = transport(m, &x.dual()?)?;
    let yd = y.dual()?;
    let phi_d = LinMap::from_fn(td.space(), yd.space(), |w| {
        phi.apply(&w.adjoint())
            .map(|v| v.adjoint())
            .unwrap_or_else(|_| w.map(|_| C64::new(f64::NAN, 0.0)))
    })?;
    let mut rel = 0.0_f64;
    for p in m.space().basis() {
        for v in x.space().basis() {
            for q in m.space().basis() {
                let lhs = phi_d.apply(&(p.adjoint() * v.adjoint() * q))?;
                rel = rel.max(frob_norm(&(lhs - phi.apply(&(q.adjoint() * v * p))?.adjoint())));
            }
        }
    }
    r.check_residual("dual/phi-relation", PSI, rel, CHECK_TOL, "Phi~(m* x~ n) = Phi(n* x m)~");
    r.merge("dual/phi", check_isomorphism(&td, &yd, &phi_d));
    let phi_d_inv = phi_d.inverse()?;
    let fd = |w: &CMatrix| phi_d.apply(w);
    let fdi = |w: &CMatrix| phi_d_inv.apply(w);
    psi_block(&mut r, "dual/", m, x.dual()?.space(), yd.space(), &fd, &fdi, (&frame, &frame2))?;
    Ok(r)
}

/// Output of [`build_c_m`].
#[derive(Debug, Clone)]
pub struct CmConstruction {
    pub linking_x: LinkingSystem,
    /// Linking system of the transported bimodule M̃⊗X⊗M, which C_M is realized against.
    pub linking_t: LinkingSystem,
    pub linking_y: LinkingSystem,
    pub c_m: ConcreteBimodule,
    pub left_frame: Vec<CMatrix>,
    pub right_frame: Vec<CMatrix>,
    pub bundle: EquivalenceBundle,
    pub datum: InclusionMoritaDatum,
    pub report: Report,
}

/// C_M = span{[[m₁, x·m₂], [(x^♮)*·m₂, m₁]]} as a C_X–C_Y equivalence bimodule.
///
/// C_M is a plain-product bimodule over C_X and the linking algebra of M̃⊗X⊗M;
/// C_Y acts through id ⊕ φ⁻¹.
pub fn build_c_m(
    m: &ConcreteBimodule,
    x: &InvolutiveBimodule,
    y: &InvolutiveBimodule,
    phi: &LinMap,
) -> Result<CmConstruction> {
    let mut report = Report::new();
    let psi = psi_theta_check(m, x, y, phi)?;
    if !psi.passed() {
        return Err(Error::ClosureFailure(psi.failure_ids().join(", ")));
    }
    report.merge("psi-theta", psi);
    let t = transport(m, x)?;
    let linking_x = linking_and_bundle(x)?;
    let linking_t = linking_and_bundle(&t)?;
    let linking_y = linking_and_bundle(y)?;
    let tol = x.tol();
    let (n, k) = (m.left().n(), m.right().n());
    let zero = CMatrix::zeros(n, k);
    let m0: Vec<CMatrix> = m.space().basis().iter().map(diag2).collect();
    let mut m1 = Vec::new();
    for v in x.space().basis() {
        let nv = x.apply(v)?.adjoint();
        for p in m.space().basis() {
            m1.push(block2(&zero, &(v * p), &(&nv * p), &zero));
        }
    }
    let m0s = MatSubspace::span(2 * n, 2 * k, &m0, tol)?;
    let m1s = MatSubspace::span(2 * n, 2 * k, &m1, tol)?;
    let all: Vec<CMatrix> = m0.iter().chain(&m1).cloned().collect();
    let space = MatSubspace::span(2 * n, 2 * k, &all, tol)?;
    let c_m = ConcreteBimodule::new(linking_x.cx().clone(), linking_t.cx().clone(), space.clone())?;

    // C_Y → C_T, [[b, y], [(y^♮)*, b]] ↦ [[b, φ⁻¹(y)], [(φ⁻¹(y)^♮)*, b]]
    let phi_inv = phi.inverse()?;
    let mut pairs = Vec::new();
    for b in y.algebra().space().basis() {
        pairs.push((diag2(b), diag2(b)));
    }
    for v in y.space().basis() {
        let w = phi_inv.apply(v)?;
        pairs.push((linking_y.embed1(v)?, linking_t.embed1(&w)?));
    }
    let to_t = LinMap::fit(linking_y.cx().space(), linking_t.cx().space(), &pairs)?;
    let mut hom = 0.0_f64;
    for a in linking_y.cx().space().basis() {
        let ta = to_t.apply(a)?;
        hom = hom.max(frob_norm(&(to_t.apply(&a.adjoint())? - ta.adjoint())));
        for b in linking_y.cx().space().basis() {
            hom = hom.max(frob_norm(&(to_t.apply(&(a * b))? - &ta * to_t.apply(b)?)));
        }
    }
    report.check_residual("cy-isomorphism", CM, hom, CHECK_TOL, "id + phi^-1 is a *-homomorphism C_Y -> C_T");
    report.check("cy-bijective", CM, to_t.is_invertible(), "");
    let mut right = 0.0_f64;
    for c in space.basis() {
        for d in linking_y.cx().space().basis() {
            right = right.max(space.relative_residual(&(c * to_t.apply(d)?))?);
        }
    }
    if right > tol || hom > CHECK_TOL {
        return Err(Error::ClosureFailure(format!("right C_Y action leaves C_M (residual {right:.3e})")));
    }
    report.check_residual("right-closure", CM, right, tol, "C_M . C_Y in C_M");
    report.merge("bimodule", c_m.verify(true));

    let u = m.right_frame()?;
    let v = m.left_frame()?;
    let left_frame: Vec<CMatrix> = u.iter().map(diag2).collect();
    let right_frame: Vec<CMatrix> = v.iter().map(diag2).collect();
    let su: CMatrix = left_frame.iter().map(|f| f * f.adjoint()).sum();
    let sv: CMatrix = right_frame.iter().map(|f| f.adjoint() * f).sum();
    report.check_residual("frame/left", CM, frob_norm(&(su - linking_x.cx().unit())), CHECK_TOL, "sum U U* = 1");
    report.check_residual("frame/right", CM, frob_norm(&(sv - linking_t.cx().unit())), CHECK_TOL, "sum V* V = 1");

    let bundle = EquivalenceBundle::new(
        linking_x.bundle().clone(),
        linking_t.bundle().clone(),
        vec![m0s, m1s],
    )?;
    report.merge("bundle", bundle.verify());
    let datum = assemble_total(&bundle)?;
    report.check_residual(
        "total-is-c-m",
        CM,
        datum.big.space().equality_residual(&space)?,
        tol,
        "M0 + M1 = C_M",
    );
    report.merge("inclusion", check_inclusion_morita(&datum));
    Ok(CmConstruction {
        linking_x,
        linking_t,
        linking_y,
        c_m,
        left_frame,
        right_frame,
        bundle,
        datum,
        report,
    })
}

/// Direction (1) when (M, φ) is supplied, plus the hypothesis audit for direction (2).
pub fn involutive_morita_check(
    a: &ConcreteStarAlgebra,
    x: &InvolutiveBimodule,
    b: &ConcreteStarAlgebra,
    y: &InvolutiveBimodule,
    m: Option<&ConcreteBimodule>,
    phi: Option<&LinMap>,
) -> Report {
    let mut r = Report::new();
    r.check("inputs/x-over-a", THEOREM, x.algebra().same_as(a), "");
    r.check("inputs/y-over-b", THEOREM, y.algebra().same_as(b), "");
    r.merge("inputs/x", x.verify());
    r.merge("inputs/y", y.verify());
    match (m, phi) {
        (Some(m), Some(phi)) => match build_c_m(m, x, y, phi) {
            Ok(cm) => {
                let ok = cm.report.passed();
                r.merge("direction1", cm.report);
                r.check("direction1/strongly-morita-equivalent", THEOREM, ok, "A in C_X ~ B in C_Y");
            }
            Err(e) => r.fail("direction1/strongly-morita-equivalent", THEOREM, e.to_string()),
        },
        _ => r.skip("direction1", THEOREM, "no (M, phi) supplied"),
    }
    r.skip("audit/x-full", THEOREM, if x.is_full() { "full" } else { "not full" });
    r.skip("audit/y-full", THEOREM, if y.is_full() { "full" } else { "not full" });
    for (id, inv) in [("audit/relative-commutant-x", x), ("audit/relative-commutant-y", y)] {
        let msg = linking_and_bundle(inv)
            .and_then(|l| relative_commutant(l.corner(), l.cx()))
            .map(|s| {
                format!(
                    "dim(A' n C_X) = {}; irreducibility {}",
                    s.dim(),
                    if s.dim() == 1 { "holds" } else { "fails, direction (2) hypothesis unsatisfied" }
                )
            })
            .unwrap_or_else(|e| e.to_string());
        r.skip(id, THEOREM, msg);
    }
    r
}

/// Dimension of A′ ∩ C_X for the corner A ⊆ C_X.
pub fn linking_relative_commutant_dim(x: &InvolutiveBimodule) -> Result<usize> {
    let l = linking_and_bundle(x)?;
    Ok(relative_commutant(l.corner(), l.cx())?.dim())
}

/// M = M₀ and Φ(m̃⊗x⊗n) = ⟨m, x·n⟩_D recovered from a Z₂ equivalence bundle.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub x: InvolutiveBimodule,
    pub y: InvolutiveBimodule,
    pub m: ConcreteBimodule,
    pub phi: LinMap,
    pub report: Report,
}

pub fn extract_from_equivalence_bundle(e: &EquivalenceBundle) -> Result<Extraction> {
    let g = e.group();
    if g.order() != 2 {
        return Err(Error::WrongGroup(g.order()));
    }
    let x = bundle_to_involutive(e.left_bundle())?;
    let y = bundle_to_involutive(e.right_bundle())?;
    let m = ConcreteBimodule::new(
        e.left_bundle().fiber_algebra()?,
        e.right_bundle().fiber_algebra()?,
        e.fiber(g.identity()).clone(),
    )?;
    let mut report = Report::new();
    report.merge("m", m.verify(true));
    let t = transport(&m, &x)?;
    let mb = m.space().basis();
    let mut pairs = Vec::new();
    let mut inside = 0.0_f64;
    for p in mb {
        for v in x.space().basis() {
            for q in mb {
                let val = p.adjoint() * (v * q);
                inside = inside.max(y.space().relative_residual(&val)?);
                pairs.push((p.adjoint() * v * q, val));
            }
        }
    }
    report.check_residual("phi/lands-in-y", THEOREM, inside, x.tol(), "<m, x n>_D in B_1");
    let phi = LinMap::fit(t.space(), y.space(), &pairs)?;
    report.check_residual(
        "phi/onto",
        THEOREM,
        t.space().equality_residual(y.space())?,
        x.tol(),
        "span <M, X M>_D = B_1",
    );
    report.merge("phi", check_isomorphism(&t, &y, &phi));
    Ok(Extraction {
        x,
        y,
        m,
        phi,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::{identity, real_matrix, DEFAULT_TOL};
    use crate::report::Status;

    const T: f64 = DEFAULT_TOL;

    fn m2() -> ConcreteStarAlgebra {
        ConcreteStarAlgebra::full(2, T)
    }

    fn scalars(n: usize) -> ConcreteStarAlgebra {
        ConcreteStarAlgebra::generate(n, &[identity(n)], T).unwrap()
    }

    fn m2_star() -> InvolutiveBimodule {
        InvolutiveBimodule::trivial(&m2()).unwrap()
    }

    #[test]
    fn adjoint_and_phase_pass_transpose_fails() {
        assert!(m2_star().verify().passed());
        let base = ConcreteBimodule::identity(&m2());
        let ph = InvolutiveBimodule::phase_adjoint(base.clone(), C64::new(0.0, 1.0)).unwrap();
        assert!(ph.verify().passed(), "{}", ph.verify());
        let tr = InvolutiveBimodule::transpose(base).unwrap();
        let r = tr.verify();
        assert_eq!(r.get("bimodule").unwrap().status, Status::Fail);
    }

    #[test]
    fn dual_is_involutive() {
        let base = ConcreteBimodule::identity(&m2());
        let ph = InvolutiveBimodule::phase_adjoint(base, C64::new(0.0, 1.0)).unwrap();
        assert!(ph.dual().unwrap().verify().passed());
    }

    #[test]
    fn linking_m2() {
        let l = linking_and_bundle(&m2_star()).unwrap();
        assert_eq!(l.bundle().fiber_dims(), vec![4, 4]);
        assert_eq!(l.cx().dim(), 8);
        assert!(l.bundle().is_saturated());
        assert!(l.verify().passed(), "{}", l.verify());
        assert_eq!(linking_relative_commutant_dim(&m2_star()).unwrap(), 2);
    }

    #[test]
    fn linking_zero_module() {
        let base = ConcreteBimodule::new(scalars(1), scalars(1), MatSubspace::zero(1, 1, T)).unwrap();
        let x = InvolutiveBimodule::adjoint(base).unwrap();
        let l = linking_and_bundle(&x).unwrap();
        assert_eq!(l.bundle().fiber_dims(), vec![1, 0]);
        assert!(!l.bundle().is_saturated());
        assert!(!x.is_full());
        assert!(l.verify().passed());
    }

    #[test]
    fn bundle_to_involutive_cases() {
        let b = catalog::group_algebra(&FiniteGroup::cyclic(2), T).unwrap();
        let x = bundle_to_involutive(&b).unwrap();
        assert_eq!(x.space().dim(), 1);
        let lam = catalog::regular_rep(&FiniteGroup::cyclic(2), 1);
        let v = x.apply(&(&lam * C64::new(2.0, 3.0))).unwrap();
        assert!((v - &lam * C64::new(2.0, -3.0)).norm() < 1e-12);
        let p = catalog::pauli_z2_regrading(T).unwrap();
        assert!(bundle_to_involutive(&p).unwrap().verify().passed());
        let k = catalog::pauli_bundle(T).unwrap();
        assert!(matches!(bundle_to_involutive(&k), Err(Error::WrongGroup(4))));
    }

    #[test]
    fn roundtrip_through_linking_bundle() {
        let x = m2_star();
        let l = linking_and_bundle(&x).unwrap();
        let back = bundle_to_involutive(l.bundle()).unwrap();
        assert_eq!(back.space().dim(), 4);
        for v in x.space().basis() {
            let e = l.embed1(v).unwrap();
            assert!(back.space().contains(&e).unwrap());
            for w in x.space().basis() {
                let prod = &e * l.embed1(w).unwrap();
                let expected = l.embed0(&(v * x.apply(w).unwrap().adjoint()));
                assert!((prod - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn transport_examples() {
        let x = m2_star();
        let m = ConcreteBimodule::identity(&m2());
        let t = transport(&m, &x).unwrap();
        assert_eq!(t.space().dim(), 4);
        assert!(t.natural().distance(x.natural()).unwrap() < 1e-10);

        let c = InvolutiveBimodule::trivial(&scalars(1)).unwrap();
        let rows = ConcreteBimodule::new(scalars(1), m2(), MatSubspace::full(1, 2, T)).unwrap();
        let t = transport(&rows, &c).unwrap();
        assert_eq!(t.space().dim(), 4);
        assert!(t.verify().passed());
        assert!(t.natural().distance(m2_star().natural()).unwrap() < 1e-10);
    }

    #[test]
    fn transport_needs_full_m() {
        let c = InvolutiveBimodule::trivial(&scalars(1)).unwrap();
        let b = ConcreteStarAlgebra::generate(2, &[identity(2)], T).unwrap();
        let sp = MatSubspace::span(1, 2, &[real_matrix(1, 2, &[1.0, 0.0])], T).unwrap();
        let m = ConcreteBimodule::new(scalars(1), b, sp).unwrap();
        assert!(transport(&m, &c).is_err());
    }

    #[test]
    fn psi_theta_identity_and_scaled() {
        let x = m2_star();
        let m = ConcreteBimodule::identity(&m2());
        let phi = LinMap::identity(x.space());
        let r = psi_theta_check(&m, &x, &x, &phi).unwrap();
        assert!(r.passed(), "{r}");
        let twice = LinMap::from_fn(x.space(), x.space(), |v| v * C64::new(2.0, 0.0)).unwrap();
        assert!(matches!(
            psi_theta_check(&m, &x, &x, &twice),
            Err(Error::NotAnInvolutiveIsomorphism(_))
        ));
    }

    #[test]
    fn c_m_for_scalars_and_m2() {
        let c = InvolutiveBimodule::trivial(&scalars(1)).unwrap();
        let m = ConcreteBimodule::identity(&scalars(1));
        let cm = build_c_m(&m, &c, &c, &LinMap::identity(c.space())).unwrap();
        assert!(cm.report.passed(), "{}", cm.report);

        let x = m2_star();
        let m = ConcreteBimodule::identity(&m2());
        let cm = build_c_m(&m, &x, &x, &LinMap::identity(x.space())).unwrap();
        assert!(cm.report.passed(), "{}", cm.report);
        assert!(cm.report.max_residual("frame") < 1e-10);
    }

    #[test]
    fn involutive_morita_m2() {
        let x = m2_star();
        let m = ConcreteBimodule::identity(&m2());
        let phi = LinMap::identity(x.space());
        let r = involutive_morita_check(&m2(), &x, &m2(), &x, Some(&m), Some(&phi));
        assert!(r.passed(), "{r}");
        let audit = r.get("audit/relative-commutant-x").unwrap();
        assert_eq!(audit.status, Status::Skip);
        assert!(audit.message.starts_with("dim(A' n C_X) = 2"));
    }

    #[test]
    fn extraction_from_identity_bundle() {
        let b = catalog::group_algebra(&FiniteGroup::cyclic(2), T).unwrap();
        let e = EquivalenceBundle::identity(&b);
        let ex = extract_from_equivalence_bundle(&e).unwrap();
        assert!(ex.report.passed(), "{}", ex.report);
        let cm = build_c_m(&ex.m, &ex.x, &ex.y, &ex.phi).unwrap();
        assert!(cm.report.passed(), "{}", cm.report);
    }

    #[test]
    fn transport_is_functorial() {
        let c = InvolutiveBimodule::trivial(&scalars(1)).unwrap();
        let m3 = ConcreteStarAlgebra::full(3, T);
        let rows = ConcreteBimodule::new(scalars(1), m2(), MatSubspace::full(1, 2, T)).unwrap();
        let n = ConcreteBimodule::new(m2(), m3, MatSubspace::full(2, 3, T)).unwrap();
        let two_step = transport(&n, &transport(&rows, &c).unwrap()).unwrap();
        let one_step = transport(&rows.tensor(&n).unwrap(), &c).unwrap();
        assert!(two_step.space().equals(one_step.space()).unwrap());
        assert!(two_step.natural().distance(one_step.natural()).unwrap() < 1e-8);
    }
}
