//! Built-in demo scenarios.

use morita_core::catalog::regular_rep;
use morita_core::linalg::{identity, pauli_z};
use morita_core::FiniteGroup;

use crate::runner::from_matrix;
use crate::scenario::*;
use crate::CliError;

/// Demo names without a group argument.
pub const FIXED_DEMOS: [&str; 6] = [
    "pauli_bundle",
    "inner_crossed_product",
    "involutive_m2",
    "cm_roundtrip",
    "reconstruction_roundtrip",
    "reconstruction_relabeled_z4",
];

/// Groups offered for `group_algebra(G)`.
pub const DEMO_GROUPS: [&str; 5] = ["Z2", "Z3", "Z4", "Z2xZ2", "S3"];

/// File stems of every bundled demo, e.g. `group_algebra_z2`.
pub fn demo_file_stems() -> Vec<String> {
    DEMO_GROUPS
        .iter()
        .map(|g| format!("group_algebra_{}", g.to_lowercase()))
        .chain(FIXED_DEMOS.iter().map(|s| s.to_string()))
        .collect()
}

fn def<T>(name: &str, spec: T) -> Def<T> {
    Def {
        name: name.to_string(),
        spec,
    }
}

fn task(id: &str, kind: TaskKind) -> Task {
    Task {
        id: Some(id.to_string()),
        kind,
    }
}

fn s(x: &str) -> String {
    x.to_string()
}

fn parse_group(name: &str) -> Option<(GroupSpec, FiniteGroup)> {
    let lower = name.to_lowercase();
    match lower.as_str() {
        "z2xz2" | "klein" | "v4" => Some((GroupSpec::Klein(true), FiniteGroup::klein())),
        "s3" => Some((GroupSpec::S3(true), FiniteGroup::s3())),
        _ => {
            let n: usize = lower.strip_prefix('z')?.parse().ok()?;
            (1..=12).contains(&n).then(|| (GroupSpec::Cyclic(n), FiniteGroup::cyclic(n)))
        }
    }
}

/// Accepts `group_algebra(Z3)` as well as the file stem `group_algebra_z3`.
fn group_argument(name: &str) -> Option<&str> {
    name.strip_prefix("group_algebra(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| name.strip_prefix("group_algebra_"))
}

/// The standard per-bundle pipeline.
fn bundle_tasks(bundle: &str) -> Vec<Task> {
    vec![
        task("verify", TaskKind::VerifyBundle { bundle: s(bundle) }),
        task("index", TaskKind::WatataniIndex { bundle: s(bundle) }),
        task(
            "basic-construction",
            TaskKind::BasicConstruction {
                bundle: s(bundle),
                witness_seed: 7,
            },
        ),
        task("isomorphism", TaskKind::BundleIsomorphism { bundle: s(bundle) }),
        task("identity-equivalence", TaskKind::IdentityEquivalence { bundle: s(bundle) }),
    ]
}

/// C[G] with its fibers written out as left-regular permutation matrices.
fn group_algebra(arg: &str) -> Result<Scenario, CliError> {
    let (spec, g) = parse_group(arg).ok_or_else(|| CliError::UnknownDemo(format!("group_algebra({arg})")))?;
    let fibers = g.elements().map(|t| vec![from_matrix(&regular_rep(&g, t))]).collect();
    Ok(Scenario {
        groups: vec![def("G", spec)],
        bundles: vec![def(
            "CG",
            BundleSpec::Fibers {
                group: s("G"),
                n: g.order(),
                fibers,
            },
        )],
        tasks: bundle_tasks("CG"),
        ..Default::default()
    })
}

fn pauli() -> Scenario {
    Scenario {
        bundles: vec![def("P", BundleSpec::Pauli(true))],
        tasks: bundle_tasks("P"),
        ..Default::default()
    }
}

/// A = B = X = M₂ with α = Ad(diag(1, −1)).
fn inner_crossed_product() -> Scenario {
    let us = vec![from_matrix(&identity(2)), from_matrix(&pauli_z())];
    Scenario {
        groups: vec![def("Z2", GroupSpec::Cyclic(2))],
        algebras: vec![def("M2", AlgebraSpec::Full(2))],
        bimodules: vec![def("X", BimoduleSpec::Identity(s("M2")))],
        actions: vec![
            def(
                "alpha",
                ActionSpec::Inner {
                    algebra: s("M2"),
                    group: s("Z2"),
                    unitaries: us.clone(),
                },
            ),
            def(
                "lambda",
                ActionSpec::BimoduleInner {
                    bimodule: s("X"),
                    left: s("alpha"),
                    right: s("alpha"),
                    u: us.clone(),
                    v: us,
                },
            ),
        ],
        tasks: vec![task(
            "crossed-product",
            TaskKind::CrossedProduct {
                alpha: s("alpha"),
                beta: s("alpha"),
                lambda: s("lambda"),
            },
        )],
        ..Default::default()
    }
}

/// X = M₂ over itself with x♮ = x* and x♮ = i·x*, transported to M₃ along
/// the 2×3 matrices.
fn involutive_m2() -> Scenario {
    let natural = |b: &str, n: NaturalSpec| InvolutionSpec::Natural {
        bimodule: s(b),
        natural: n,
    };
    Scenario {
        algebras: vec![def("M2", AlgebraSpec::Full(2)), def("M3", AlgebraSpec::Full(3))],
        bimodules: vec![
            def("X", BimoduleSpec::Identity(s("M2"))),
            def("Y", BimoduleSpec::Identity(s("M3"))),
            def(
                "M",
                BimoduleSpec::Full {
                    left: s("M2"),
                    right: s("M3"),
                },
            ),
            def(
                "N",
                BimoduleSpec::Full {
                    left: s("M3"),
                    right: s("M2"),
                },
            ),
        ],
        involutions: vec![
            def("star", natural("X", NaturalSpec::Adjoint)),
            def("istar", natural("X", NaturalSpec::PhaseAdjoint(Scalar::Complex([0.0, 1.0])))),
            def("star3", natural("Y", NaturalSpec::Adjoint)),
        ],
        tasks: vec![
            task("verify-star", TaskKind::VerifyInvolutive { involution: s("star") }),
            task("verify-istar", TaskKind::VerifyInvolutive { involution: s("istar") }),
            task("linking", TaskKind::Linking { involution: s("star") }),
            task(
                "transport",
                TaskKind::TransportFunctoriality {
                    first: s("M"),
                    second: s("N"),
                    involution: s("star"),
                },
            ),
            task(
                "c-m",
                TaskKind::BuildCM {
                    bimodule: s("M"),
                    x: s("star"),
                    y: s("star3"),
                    phi: PhiSpec::Identity,
                },
            ),
            task(
                "morita",
                TaskKind::InvolutiveMorita {
                    x: s("star"),
                    y: s("star3"),
                    bimodule: Some(s("M")),
                    phi: Some(PhiSpec::Identity),
                },
            ),
        ],
        ..Default::default()
    }
}

/// Involutive data and C_M recovered from Z₂-bundles.
fn cm_roundtrip() -> Scenario {
    Scenario {
        groups: vec![def("Z2", GroupSpec::Cyclic(2))],
        bundles: vec![
            def("CZ2", BundleSpec::GroupAlgebra(s("Z2"))),
            def("M2Z2", BundleSpec::M2TensorZ2(true)),
        ],
        involutions: vec![
            def("odd-cz2", InvolutionSpec::FromBundle(s("CZ2"))),
            def("odd-m2z2", InvolutionSpec::FromBundle(s("M2Z2"))),
        ],
        tasks: vec![
            task("verify-cz2", TaskKind::VerifyInvolutive { involution: s("odd-cz2") }),
            task("linking-cz2", TaskKind::Linking { involution: s("odd-cz2") }),
            task("extract-cz2", TaskKind::Extract { bundle: s("CZ2") }),
            task("verify-m2z2", TaskKind::VerifyInvolutive { involution: s("odd-m2z2") }),
            task("linking-m2z2", TaskKind::Linking { involution: s("odd-m2z2") }),
            task("extract-m2z2", TaskKind::Extract { bundle: s("M2Z2") }),
        ],
        ..Default::default()
    }
}

/// Z from a bundle and itself with f = id.
fn reconstruction_roundtrip() -> Scenario {
    let orders = [2usize, 3, 4];
    Scenario {
        groups: orders.iter().map(|n| def(&format!("Z{n}"), GroupSpec::Cyclic(*n))).collect(),
        bundles: orders
            .iter()
            .map(|n| def(&format!("CZ{n}"), BundleSpec::GroupAlgebra(format!("Z{n}"))))
            .collect(),
        tasks: orders
            .iter()
            .map(|n| {
                task(
                    &format!("roundtrip-z{n}"),
                    TaskKind::Reconstruction {
                        a: format!("CZ{n}"),
                        b: format!("CZ{n}"),
                        f: Some((0..*n).collect()),
                    },
                )
            })
            .collect(),
        ..Default::default()
    }
}

/// B = C[Z₄] regraded by inversion; the search should find f = inversion.
fn reconstruction_relabeled_z4() -> Scenario {
    Scenario {
        groups: vec![def("Z4", GroupSpec::Cyclic(4))],
        bundles: vec![
            def("A", BundleSpec::GroupAlgebra(s("Z4"))),
            def(
                "B",
                BundleSpec::Relabel {
                    bundle: s("A"),
                    f: vec![0, 3, 2, 1],
                },
            ),
        ],
        tasks: vec![
            task("verify-b", TaskKind::VerifyBundle { bundle: s("B") }),
            task(
                "search",
                TaskKind::Reconstruction {
                    a: s("A"),
                    b: s("B"),
                    f: None,
                },
            ),
        ],
        ..Default::default()
    }
}

/// The scenario for a demo name.
pub fn generate_demo(name: &str) -> Result<Scenario, CliError> {
    if let Some(arg) = group_argument(name) {
        return group_algebra(arg);
    }
    Ok(match name {
        "pauli_bundle" => pauli(),
        "inner_crossed_product" => inner_crossed_product(),
        "involutive_m2" => involutive_m2(),
        "cm_roundtrip" => cm_roundtrip(),
        "reconstruction_roundtrip" => reconstruction_roundtrip(),
        "reconstruction_relabeled_z4" => reconstruction_relabeled_z4(),
        _ => return Err(CliError::UnknownDemo(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for stem in demo_file_stems() {
            assert!(generate_demo(&stem).is_ok(), "{stem}");
        }
        assert!(generate_demo("group_algebra(Z3)").is_ok());
        assert!(matches!(generate_demo("nope"), Err(CliError::UnknownDemo(_))));
        assert!(matches!(generate_demo("group_algebra(Q8)"), Err(CliError::UnknownDemo(_))));
    }

    #[test]
    fn scenarios_roundtrip_through_json() {
        for stem in demo_file_stems() {
            let sc = generate_demo(&stem).unwrap();
            assert_eq!(Scenario::from_json(&sc.to_json()).unwrap(), sc);
        }
    }
}
