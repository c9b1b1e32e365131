//! Builds scenario objects in declaration order and executes tasks.

use std::collections::HashMap;

use morita_core::bimodule::{check_inclusion_morita, ConcreteBimodule};
use morita_core::bundle::GradedCStarBundle;
use morita_core::equivalence_bundle::{assemble_total, crossed_product_system, ActionSystem, BimoduleAction, EquivalenceBundle};
use morita_core::linalg::{frob_norm, CMatrix, C64, CHECK_TOL, DEFAULT_TOL};
use morita_core::linmap::{LinMap, RealLinMap};
use morita_core::matspace::MatSubspace;
use morita_core::report::Report;
use morita_core::star_algebra::ConcreteStarAlgebra;
use morita_core::{
    build_c_m, build_z_bundle, bundle_a1_and_iso, bundle_to_involutive, catalog, linking_and_bundle, overlap_factory,
    search_automorphism, involutive_morita_check, transport, verify_theorem_conclusion, BasicConstructionResult, Error,
    FiniteGroup, InvolutiveBimodule, ReconstructionInput,
};
use morita_core::involutive::{extract_from_equivalence_bundle, linking_relative_commutant_dim};

use crate::scenario::*;
use crate::CliError;

enum Action {
    Algebra(ActionSystem),
    Bimodule(Box<BimoduleAction>),
}

/// Named objects of a scenario.
pub struct Registry {
    tol: f64,
    groups: HashMap<String, FiniteGroup>,
    algebras: HashMap<String, ConcreteStarAlgebra>,
    bundles: HashMap<String, GradedCStarBundle>,
    /// Bimodule with the basis its realified maps are written in.
    bimodules: HashMap<String, (ConcreteBimodule, Vec<CMatrix>)>,
    actions: HashMap<String, Action>,
    involutions: HashMap<String, InvolutiveBimodule>,
}

/// Task failure: malformed input aborts the run, core errors become fail records.
enum TaskError {
    Cli(CliError),
    Core(Error),
}

impl From<CliError> for TaskError {
    fn from(e: CliError) -> Self {
        TaskError::Cli(e)
    }
}

impl From<Error> for TaskError {
    fn from(e: Error) -> Self {
        TaskError::Core(e)
    }
}

type TaskResult = std::result::Result<Report, TaskError>;

pub fn to_matrix(m: &Mat) -> Result<CMatrix, CliError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(CliError::Parse("ragged matrix".into()));
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| {
        let (re, im) = m[i][j].parts();
        C64::new(re, im)
    }))
}

pub fn from_matrix(m: &CMatrix) -> Mat {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| {
                    let z = m[(i, j)];
                    if z.im == 0.0 {
                        Scalar::Real(z.re)
                    } else {
                        Scalar::Complex([z.re, z.im])
                    }
                })
                .collect()
        })
        .collect()
}

fn to_matrices(ms: &[Mat]) -> Result<Vec<CMatrix>, CliError> {
    ms.iter().map(to_matrix).collect()
}

fn lookup<'a, T>(map: &'a HashMap<String, T>, kind: &str, name: &str) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| CliError::UnresolvedReference(format!("{kind} `{name}`")))
}

fn insert<T>(map: &mut HashMap<String, T>, name: &str, value: T) -> Result<(), CliError> {
    if map.insert(name.to_string(), value).is_some() {
        return Err(CliError::Duplicate(name.to_string()));
    }
    Ok(())
}

fn invalid(name: &str) -> impl Fn(Error) -> CliError + '_ {
    move |source| CliError::Invalid {
        name: name.to_string(),
        source,
    }
}

fn scalar(s: Scalar) -> C64 {
    let (re, im) = s.parts();
    C64::new(re, im)
}

impl Registry {
    pub fn build(s: &Scenario, tol: f64) -> Result<Self, CliError> {
        let mut r = Registry {
            tol,
            groups: HashMap::new(),
            algebras: HashMap::new(),
            bundles: HashMap::new(),
            bimodules: HashMap::new(),
            actions: HashMap::new(),
            involutions: HashMap::new(),
        };
        for d in &s.groups {
            let g = r.group(&d.name, &d.spec)?;
            insert(&mut r.groups, &d.name, g)?;
        }
        // Algebras may name a bundle's unit fiber, so bundles come first.
        for d in &s.bundles {
            let b = r.bundle(&d.name, &d.spec)?;
            insert(&mut r.bundles, &d.name, b)?;
        }
        for d in &s.algebras {
            let a = r.algebra(&d.name, &d.spec)?;
            insert(&mut r.algebras, &d.name, a)?;
        }
        for d in &s.bimodules {
            let m = r.bimodule(&d.name, &d.spec)?;
            insert(&mut r.bimodules, &d.name, m)?;
        }
        for d in &s.actions {
            let a = r.action(&d.name, &d.spec)?;
            insert(&mut r.actions, &d.name, a)?;
        }
        for d in &s.involutions {
            let x = r.involution(&d.name, &d.spec)?;
            insert(&mut r.involutions, &d.name, x)?;
        }
        Ok(r)
    }

    fn group(&self, name: &str, spec: &GroupSpec) -> Result<FiniteGroup, CliError> {
        Ok(match spec {
            GroupSpec::Cyclic(n) if *n == 0 => {
                return Err(CliError::Parse(format!("group `{name}`: cyclic order must be positive")))
            }
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::Klein(_) => FiniteGroup::klein(),
            GroupSpec::S3(_) => FiniteGroup::s3(),
            GroupSpec::Table(t) => FiniteGroup::from_table(t.clone()).map_err(invalid(name))?,
            GroupSpec::Product([g, h]) => {
                FiniteGroup::direct_product(lookup(&self.groups, "group", g)?, lookup(&self.groups, "group", h)?)
            }
        })
    }

    fn bundle(&self, name: &str, spec: &BundleSpec) -> Result<GradedCStarBundle, CliError> {
        let tol = self.tol;
        let err = invalid(name);
        match spec {
            BundleSpec::Fibers { group, n, fibers } => {
                let g = lookup(&self.groups, "group", group)?;
                let sets = fibers.iter().map(|f| to_matrices(f)).collect::<Result<Vec<_>, _>>()?;
                GradedCStarBundle::from_spanning_sets(g.clone(), *n, &sets, tol).map_err(err)
            }
            BundleSpec::GroupAlgebra(g) => catalog::group_algebra(lookup(&self.groups, "group", g)?, tol).map_err(err),
            BundleSpec::Pauli(_) => catalog::pauli_bundle(tol).map_err(err),
            BundleSpec::M2TensorZ2(_) => catalog::m2_tensor_z2(tol).map_err(err),
            BundleSpec::PauliZ2Regrading(_) => catalog::pauli_z2_regrading(tol).map_err(err),
            BundleSpec::Relabel { bundle, f } => lookup(&self.bundles, "bundle", bundle)?.relabel(f).map_err(err),
        }
    }

    fn algebra(&self, name: &str, spec: &AlgebraSpec) -> Result<ConcreteStarAlgebra, CliError> {
        match spec {
            AlgebraSpec::Full(n) => Ok(ConcreteStarAlgebra::full(*n, self.tol)),
            AlgebraSpec::Generated { n, generators } => {
                ConcreteStarAlgebra::generate(*n, &to_matrices(generators)?, self.tol).map_err(invalid(name))
            }
            AlgebraSpec::UnitFiber(b) => lookup(&self.bundles, "bundle", b)?.fiber_algebra().map_err(invalid(name)),
        }
    }

    fn algebra_ref(&self, name: &str) -> Result<&ConcreteStarAlgebra, CliError> {
        lookup(&self.algebras, "algebra", name)
    }

    fn bimodule_ref(&self, name: &str) -> Result<&ConcreteBimodule, CliError> {
        Ok(&lookup(&self.bimodules, "bimodule", name)?.0)
    }

    fn bimodule(&self, name: &str, spec: &BimoduleSpec) -> Result<(ConcreteBimodule, Vec<CMatrix>), CliError> {
        let err = invalid(name);
        let m = match spec {
            BimoduleSpec::Span {
                left,
                right,
                rows,
                cols,
                basis,
            } => {
                let listed = to_matrices(basis)?;
                let space = MatSubspace::span(*rows, *cols, &listed, self.tol).map_err(&err)?;
                let m = ConcreteBimodule::new(self.algebra_ref(left)?.clone(), self.algebra_ref(right)?.clone(), space)
                    .map_err(&err)?;
                return Ok((m, listed));
            }
            BimoduleSpec::Identity(a) => ConcreteBimodule::identity(self.algebra_ref(a)?),
            BimoduleSpec::Full { left, right } => {
                let (l, r) = (self.algebra_ref(left)?, self.algebra_ref(right)?);
                let space = MatSubspace::full(l.n(), r.n(), self.tol);
                ConcreteBimodule::new(l.clone(), r.clone(), space).map_err(&err)?
            }
            BimoduleSpec::Tensor([a, b]) => self.bimodule_ref(a)?.tensor(self.bimodule_ref(b)?).map_err(&err)?,
            BimoduleSpec::Dual(a) => self.bimodule_ref(a)?.dual(),
        };
        let listed = m.space().basis().to_vec();
        Ok((m, listed))
    }

    fn algebra_action(&self, name: &str) -> Result<&ActionSystem, CliError> {
        match lookup(&self.actions, "action", name)? {
            Action::Algebra(a) => Ok(a),
            Action::Bimodule(_) => Err(CliError::UnresolvedReference(format!("algebra action `{name}`"))),
        }
    }

    fn bimodule_action(&self, name: &str) -> Result<&BimoduleAction, CliError> {
        match lookup(&self.actions, "action", name)? {
            Action::Bimodule(a) => Ok(a),
            Action::Algebra(_) => Err(CliError::UnresolvedReference(format!("bimodule action `{name}`"))),
        }
    }

    fn action(&self, name: &str, spec: &ActionSpec) -> Result<Action, CliError> {
        let err = invalid(name);
        Ok(match spec {
            ActionSpec::Inner {
                algebra,
                group,
                unitaries,
            } => Action::Algebra(
                ActionSystem::inner(
                    self.algebra_ref(algebra)?.clone(),
                    lookup(&self.groups, "group", group)?.clone(),
                    &to_matrices(unitaries)?,
                )
                .map_err(err)?,
            ),
            ActionSpec::BimoduleInner {
                bimodule,
                left,
                right,
                u,
                v,
            } => Action::Bimodule(Box::new(
                BimoduleAction::inner(
                    self.bimodule_ref(bimodule)?.clone(),
                    self.algebra_action(left)?.clone(),
                    self.algebra_action(right)?.clone(),
                    &to_matrices(u)?,
                    &to_matrices(v)?,
                )
                .map_err(err)?,
            )),
        })
    }

    fn involution_ref(&self, name: &str) -> Result<&InvolutiveBimodule, CliError> {
        lookup(&self.involutions, "involution", name)
    }

    fn involution(&self, name: &str, spec: &InvolutionSpec) -> Result<InvolutiveBimodule, CliError> {
        let err = invalid(name);
        match spec {
            InvolutionSpec::Natural { bimodule, natural } => {
                let (base, listed) = lookup(&self.bimodules, "bimodule", bimodule)?;
                let base = base.clone();
                match natural {
                    NaturalSpec::Adjoint => InvolutiveBimodule::adjoint(base),
                    NaturalSpec::PhaseAdjoint(w) => InvolutiveBimodule::phase_adjoint(base, scalar(*w)),
                    NaturalSpec::Transpose => InvolutiveBimodule::transpose(base),
                    NaturalSpec::Realified(r) => {
                        let map = realified(&base, listed, r)?;
                        InvolutiveBimodule::new(base, map)
                    }
                }
                .map_err(err)
            }
            InvolutionSpec::FromBundle(b) => bundle_to_involutive(lookup(&self.bundles, "bundle", b)?).map_err(err),
            InvolutionSpec::Transport { bimodule, involution } => {
                transport(self.bimodule_ref(bimodule)?, self.involution_ref(involution)?).map_err(err)
            }
        }
    }
}

/// Column j (resp. k + j) of `r` holds [Re; Im] of the image of b_j (resp. i·b_j).
fn realified(base: &ConcreteBimodule, listed: &[CMatrix], r: &[Vec<f64>]) -> Result<RealLinMap, CliError> {
    let k = listed.len();
    if r.len() != 2 * k || r.iter().any(|row| row.len() != 2 * k) {
        return Err(CliError::Parse(format!("realified map must be {0}×{0}", 2 * k)));
    }
    let image = |col: usize| -> CMatrix {
        let mut out = CMatrix::zeros(base.space().rows(), base.space().cols());
        for (i, b) in listed.iter().enumerate() {
            out += b * C64::new(r[i][col], r[i + k][col]);
        }
        out
    };
    let pairs: Vec<(CMatrix, CMatrix)> = (0..k)
        .flat_map(|j| {
            let b = listed[j].clone();
            let ib = &b * C64::i();
            [(b, image(j)), (ib, image(j + k))]
        })
        .collect();
    let sp = base.space();
    RealLinMap::fit(sp, sp, &pairs).map_err(|source| CliError::Invalid {
        name: "realified involution".into(),
        source,
    })
}

/// Name of a task's operation as written in the scenario file.
pub fn op_name(kind: &TaskKind) -> String {
    serde_json::to_value(kind)
        .ok()
        .and_then(|v| v.get("op").and_then(|o| o.as_str()).map(str::to_string))
        .unwrap_or_default()
}

/// Render an index value, as an integer when it is one up to 1e−6.
pub fn format_index(v: f64) -> String {
    if (v - v.round()).abs() < 1e-6 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.6}")
    }
}

impl Registry {
    fn bundle_ref(&self, name: &str) -> Result<&GradedCStarBundle, CliError> {
        lookup(&self.bundles, "bundle", name)
    }

    fn phi(&self, m: &ConcreteBimodule, x: &InvolutiveBimodule, y: &InvolutiveBimodule, spec: &PhiSpec) -> Result<LinMap, Error> {
        let w = match spec {
            PhiSpec::Identity => C64::new(1.0, 0.0),
            PhiSpec::Scaled(s) => scalar(*s),
        };
        let t = transport(m, x)?;
        LinMap::from_fn(t.space(), y.space(), |v| v * w)
    }

    fn execute(&self, kind: &TaskKind) -> TaskResult {
        let mut r = Report::new();
        match kind {
            TaskKind::VerifyBundle { bundle } => {
                let b = self.bundle_ref(bundle)?;
                r = b.verify();
                let msg = match b.unsaturated_element() {
                    None => "saturated".to_string(),
                    Some(t) => format!("not saturated at element {t}"),
                };
                r.skip("saturation", "graded-bundle", msg);
            }
            TaskKind::WatataniIndex { bundle } => {
                let b = self.bundle_ref(bundle)?;
                let qb = b.quasi_basis_and_index()?;
                let unit = b.unit()?;
                let value = (qb.index.trace() / unit.trace()).re;
                r.check_residual("quasi-basis", "watatani-index", qb.identity_residual, CHECK_TOL, "sum c_j E(c_j* x) = x");
                r.check_residual(
                    "watatani-index",
                    "watatani-index",
                    b.index_defect(&qb)?,
                    CHECK_TOL,
                    format!("watatani_index: {}", format_index(value)),
                );
            }
            TaskKind::BasicConstruction { bundle, witness_seed } => {
                let bc = BasicConstructionResult::build(self.bundle_ref(bundle)?)?;
                r = bc.verify();
                let w = bc.randomized_witnesses(*witness_seed)?;
                let diff = bc
                    .e_projections_with(&w)?
                    .iter()
                    .zip(bc.e_projections())
                    .map(|(a, b)| frob_norm(&(a - b)))
                    .fold(0.0, f64::max);
                r.check_residual("e/witness-invariance", "e-projections", diff, CHECK_TOL, format!("seed {witness_seed}"));
            }
            TaskKind::BundleIsomorphism { bundle } => {
                let bc = BasicConstructionResult::build(self.bundle_ref(bundle)?)?;
                r = bundle_a1_and_iso(&bc)?.1;
            }
            TaskKind::IdentityEquivalence { bundle } => {
                let e = EquivalenceBundle::identity(self.bundle_ref(bundle)?);
                r.merge("bundle", e.verify());
                r.merge("total", check_inclusion_morita(&assemble_total(&e)?));
            }
            TaskKind::CrossedProduct { alpha, beta, lambda } => {
                let cp = crossed_product_system(
                    self.algebra_action(alpha)?,
                    self.algebra_action(beta)?,
                    self.bimodule_action(lambda)?,
                )?;
                let datum = assemble_total(&cp.equivalence)?;
                r.merge("system", cp.report);
                r.merge("total", check_inclusion_morita(&datum));
            }
            TaskKind::Reconstruction { a, b, f } => {
                let (a, b) = (self.bundle_ref(a)?, self.bundle_ref(b)?);
                let (f, rb) = match f {
                    Some(f) => {
                        let bc_a = BasicConstructionResult::build(a)?;
                        let bc_b = BasicConstructionResult::build(b)?;
                        let lambda = overlap_factory(&bc_a, &bc_b, f)?;
                        let rb = build_z_bundle(ReconstructionInput {
                            bc_a,
                            bc_b,
                            f: f.clone(),
                            lambda,
                        })?;
                        (f.clone(), rb)
                    }
                    None => {
                        let (f, rb) = search_automorphism(a, b, &overlap_factory)?;
                        r.check("search", "reconstruction", true, format!("f = {f:?}"));
                        (f, rb)
                    }
                };
                r.merge("z", rb.report().clone());
                r.merge("conclusion", verify_theorem_conclusion(&rb, &f));
            }
            TaskKind::VerifyInvolutive { involution } => {
                r = self.involution_ref(involution)?.verify();
            }
            TaskKind::Linking { involution } => {
                let x = self.involution_ref(involution)?;
                r = linking_and_bundle(x)?.verify();
                let dim = linking_relative_commutant_dim(x)?;
                r.skip("audit/relative-commutant", "linking-algebra", format!("dim(A' n C_X) = {dim}"));
            }
            TaskKind::TransportFunctoriality {
                first,
                second,
                involution,
            } => {
                let (m, n, x) = (self.bimodule_ref(first)?, self.bimodule_ref(second)?, self.involution_ref(involution)?);
                let stepwise = transport(n, &transport(m, x)?)?;
                let direct = transport(&m.tensor(n)?, x)?;
                r.check_residual(
                    "spaces",
                    "involutive-bimodule",
                    stepwise.space().equality_residual(direct.space())?,
                    CHECK_TOL,
                    "N~(M~ X M)N = (MN)~ X (MN)",
                );
                r.check_residual(
                    "natural",
                    "involutive-bimodule",
                    stepwise.natural().distance(direct.natural())?,
                    CHECK_TOL,
                    "induced involutions agree",
                );
                r.merge("direct", direct.verify());
            }
            TaskKind::BuildCM { bimodule, x, y, phi } => {
                let (m, x, y) = (self.bimodule_ref(bimodule)?, self.involution_ref(x)?, self.involution_ref(y)?);
                let phi = self.phi(m, x, y, phi)?;
                r = build_c_m(m, x, y, &phi)?.report;
            }
            TaskKind::InvolutiveMorita { x, y, bimodule, phi } => {
                let (x, y) = (self.involution_ref(x)?, self.involution_ref(y)?);
                let m = bimodule.as_deref().map(|b| self.bimodule_ref(b)).transpose()?;
                let phi = match m {
                    Some(m) => Some(self.phi(m, x, y, phi.as_ref().unwrap_or(&PhiSpec::Identity))?),
                    None => None,
                };
                r = involutive_morita_check(x.algebra(), x, y.algebra(), y, m, phi.as_ref());
            }
            TaskKind::Extract { bundle } => {
                let e = EquivalenceBundle::identity(self.bundle_ref(bundle)?);
                let ex = extract_from_equivalence_bundle(&e)?;
                let cm = build_c_m(&ex.m, &ex.x, &ex.y, &ex.phi)?;
                r.merge("extraction", ex.report);
                r.merge("c-m", cm.report);
            }
        }
        Ok(r)
    }
}

/// Build all objects and run every task, merging reports under the task ids.
///
/// Ids default to `{index:03}-{op}`. A core error inside a task becomes a
/// failing `{id}/error` record; malformed input aborts with [`CliError`].
pub fn run(scenario: &Scenario, tol: Option<f64>) -> Result<Report, CliError> {
    let tol = tol.or(scenario.tol).unwrap_or(DEFAULT_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Parse(format!("tolerance must be positive, got {tol}")));
    }
    let reg = Registry::build(scenario, tol)?;
    let mut report = Report::new();
    for (i, task) in scenario.tasks.iter().enumerate() {
        let op = op_name(&task.kind);
        let id = task.id.clone().unwrap_or_else(|| format!("{:03}-{op}", i + 1));
        match reg.execute(&task.kind) {
            Ok(r) => report.merge(&id, r),
            Err(TaskError::Core(e)) => report.fail(format!("{id}/error"), &op, e.to_string()),
            Err(TaskError::Cli(e)) => return Err(e),
        }
    }
    Ok(report)
}
