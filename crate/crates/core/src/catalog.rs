//! Standard bundles used by tests, demos and the acceptance suite.

use crate::bundle::GradedCStarBundle;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::linalg::{identity, kron, pauli_x, pauli_y, pauli_z, unit_matrix, CMatrix, C64};

/// Left regular representation λ_s e_t = e_{st}.
pub fn regular_rep(g: &FiniteGroup, s: usize) -> CMatrix {
    let n = g.order();
    let mut m = CMatrix::zeros(n, n);
    for t in g.elements() {
        m[(g.mul(s, t), t)] = C64::new(1.0, 0.0);
    }
    m
}

/// The group algebra C[G] in its regular representation, A_t = C·λ_t.
pub fn group_algebra(g: &FiniteGroup, tol: f64) -> Result<GradedCStarBundle> {
    let sets: Vec<Vec<CMatrix>> = g.elements().map(|t| vec![regular_rep(g, t)]).collect();
    GradedCStarBundle::from_spanning_sets(g.clone(), g.order(), &sets, tol)
}

/// Pauli matrices graded by Z₂×Z₂: (0,0) ↦ I, (0,1) ↦ σ_z, (1,0) ↦ σ_x, (1,1) ↦ σ_y.
pub fn pauli_bundle(tol: f64) -> Result<GradedCStarBundle> {
    let sets = vec![
        vec![identity(2)],
        vec![pauli_z()],
        vec![pauli_x()],
        vec![pauli_y()],
    ];
    GradedCStarBundle::from_spanning_sets(FiniteGroup::klein(), 2, &sets, tol)
}

/// M₂ ⊗ C[Z₂] on C⁴, A_t = M₂ ⊗ λ_t.
pub fn m2_tensor_z2(tol: f64) -> Result<GradedCStarBundle> {
    let g = FiniteGroup::cyclic(2);
    let sets: Vec<Vec<CMatrix>> = g
        .elements()
        .map(|t| {
            let lam = regular_rep(&g, t);
            (0..4)
                .map(|k| kron(&unit_matrix(2, k / 2, k % 2), &lam))
                .collect()
        })
        .collect();
    GradedCStarBundle::from_spanning_sets(g, 4, &sets, tol)
}

/// M₂ graded by Z₂ with A₀ = span{I, σ_z} and A₁ = span{σ_x, σ_y}.
pub fn pauli_z2_regrading(tol: f64) -> Result<GradedCStarBundle> {
    let sets = vec![vec![identity(2), pauli_z()], vec![pauli_x(), pauli_y()]];
    GradedCStarBundle::from_spanning_sets(FiniteGroup::cyclic(2), 2, &sets, tol)
}

/// The four bundles on which the index and projection laws are exercised.
pub fn standard_bundles(tol: f64) -> Result<Vec<(&'static str, GradedCStarBundle)>> {
    Ok(vec![
        ("C[Z2]", group_algebra(&FiniteGroup::cyclic(2), tol)?),
        ("C[Z3]", group_algebra(&FiniteGroup::cyclic(3), tol)?),
        ("Pauli(Z2xZ2)", pauli_bundle(tol)?),
        ("M2(x)C[Z2]", m2_tensor_z2(tol)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_TOL;

    #[test]
    fn catalog_bundles_verify_and_saturate() {
        for (name, b) in standard_bundles(DEFAULT_TOL).unwrap() {
            let r = b.verify();
            assert!(r.passed(), "{name}: {r}");
            assert!(b.is_saturated(), "{name}");
        }
        let p = pauli_z2_regrading(DEFAULT_TOL).unwrap();
        assert!(p.verify().passed());
        assert!(p.is_saturated());
    }

    #[test]
    fn regular_rep_is_a_homomorphism() {
        let g = FiniteGroup::s3();
        for s in g.elements() {
            for t in g.elements() {
                let lhs = regular_rep(&g, s) * regular_rep(&g, t);
                assert_eq!(lhs, regular_rep(&g, g.mul(s, t)));
            }
        }
    }
}
