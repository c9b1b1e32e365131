//! Property tests for subspaces, linear maps and bundles.

use morita_core::catalog;
use morita_core::linalg::{frob_norm, random_matrix, random_unitary, CMatrix, DEFAULT_TOL};
use morita_core::{BasicConstructionResult, FiniteGroup, LinMap, MatSubspace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_gens(seed: u64, r: usize, c: usize, k: usize) -> Vec<CMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| random_matrix(&mut rng, r, c)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_is_idempotent_and_orthogonal(seed in any::<u64>(), r in 1usize..4, c in 1usize..4, k in 1usize..6) {
        let gens = random_gens(seed, r, c, k);
        let s = MatSubspace::span(r, c, &gens, DEFAULT_TOL).unwrap();
        let probe = random_gens(seed ^ 1, r, c, 1).remove(0);
        let p = s.project(&probe).unwrap();
        prop_assert!(frob_norm(&(s.project(&p).unwrap() - &p)) < 1e-10);
        for b in s.basis() {
            let inner: num_complex::Complex64 = b.iter().zip((&probe - &p).iter()).map(|(x, y)| x.conj() * y).sum();
            prop_assert!(inner.norm() < 1e-10);
        }
    }

    #[test]
    fn adjoint_of_product_span(seed in any::<u64>(), n in 1usize..4, k in 1usize..4) {
        let a = MatSubspace::span(n, n, &random_gens(seed, n, n, k), DEFAULT_TOL).unwrap();
        let b = MatSubspace::span(n, n, &random_gens(seed ^ 7, n, n, k), DEFAULT_TOL).unwrap();
        let lhs = a.product_span(&b).unwrap().adjoint_span();
        let rhs = b.adjoint_span().product_span(&a.adjoint_span()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn sum_is_commutative_and_contains_both(seed in any::<u64>(), r in 1usize..4, c in 1usize..4) {
        let a = MatSubspace::span(r, c, &random_gens(seed, r, c, 2), DEFAULT_TOL).unwrap();
        let b = MatSubspace::span(r, c, &random_gens(seed ^ 3, r, c, 2), DEFAULT_TOL).unwrap();
        let ab = a.sum(&b).unwrap();
        prop_assert!(ab.equals(&b.sum(&a).unwrap()).unwrap());
        prop_assert!(ab.contains_space(&a).unwrap() && ab.contains_space(&b).unwrap());
    }

    #[test]
    fn fitted_map_reproduces_conjugation(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unitary(&mut rng, n);
        let full = MatSubspace::full(n, n, DEFAULT_TOL);
        let f = LinMap::from_fn(&full, &full, |x| &u * x * u.adjoint()).unwrap();
        let x = random_matrix(&mut rng, n, n);
        prop_assert!(frob_norm(&(f.apply(&x).unwrap() - &u * &x * u.adjoint())) < 1e-10);
        let back = f.inverse().unwrap().compose(&f);
        prop_assert!(back.distance(&LinMap::identity(&full)).unwrap() < 1e-10);
    }

    #[test]
    fn group_algebra_projections_for_random_witnesses(n in 2usize..5, seed in any::<u64>()) {
        let b = catalog::group_algebra(&FiniteGroup::cyclic(n), DEFAULT_TOL).unwrap();
        let r = BasicConstructionResult::build(&b).unwrap();
        let w = r.randomized_witnesses(seed).unwrap();
        let e = r.e_projections_with(&w).unwrap();
        let sum: CMatrix = e.iter().sum();
        prop_assert!(frob_norm(&(sum - CMatrix::identity(n, n))) < 1e-8);
        for (a, b) in e.iter().zip(r.e_projections()) {
            prop_assert!(frob_norm(&(a - b)) < 1e-8);
        }
    }
}
