//! Randomized agreement between `MatSubspace` and plain Gaussian elimination
//! over realified coordinates.

use morita_core::linalg::{CMatrix, C64, DEFAULT_TOL};
use morita_core::MatSubspace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank of a dense real matrix (rows of `v`) by elimination with partial pivoting.
fn ge_rank(mut v: Vec<Vec<f64>>, tol: f64) -> usize {
    let rows = v.len();
    if rows == 0 {
        return 0;
    }
    let cols = v[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).max_by(|&a, &b| v[a][col].abs().total_cmp(&v[b][col].abs())) else {
            break;
        };
        if v[p][col].abs() <= tol {
            continue;
        }
        v.swap(rank, p);
        for r in 0..rows {
            if r != rank {
                let f = v[r][col] / v[rank][col];
                if f != 0.0 {
                    for c in col..cols {
                        v[r][c] -= f * v[rank][c];
                    }
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// The vectors g and i·g, realified, for each generator.
fn real_rows(gens: &[CMatrix]) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for g in gens {
        for phase in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
            let h = g * phase;
            let mut row: Vec<f64> = h.iter().map(|z| z.re).collect();
            row.extend(h.iter().map(|z| z.im));
            out.push(row);
        }
    }
    out
}

/// Complex dimension of the span.
fn oracle_dim(gens: &[CMatrix]) -> usize {
    ge_rank(real_rows(gens), 1e-9) / 2
}

fn small_int(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-2..=2) as f64
}

fn int_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> CMatrix {
    CMatrix::from_fn(r, c, |_, _| C64::new(small_int(rng), small_int(rng)))
}

/// Generators of a planted rank: integer combinations of a few integer seeds.
fn instance(rng: &mut ChaCha8Rng) -> (usize, usize, Vec<CMatrix>) {
    let r = rng.random_range(1..=4);
    let c = rng.random_range(1..=4);
    let seeds_n = rng.random_range(1..=(r * c).min(8));
    let seeds: Vec<CMatrix> = (0..seeds_n).map(|_| int_matrix(rng, r, c)).collect();
    let k = rng.random_range(1..=8);
    let gens = (0..k)
        .map(|_| {
            let mut m = CMatrix::zeros(r, c);
            for s in &seeds {
                m += s * C64::new(small_int(rng), small_int(rng));
            }
            m
        })
        .collect();
    (r, c, gens)
}

#[test]
fn span_dimension_and_membership_agree_with_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for _ in 0..1200 {
        let (r, c, gens) = instance(&mut rng);
        let s = MatSubspace::span(r, c, &gens, DEFAULT_TOL).unwrap();
        let d = oracle_dim(&gens);
        assert_eq!(s.dim(), d, "dimension mismatch on {r}x{c} with {} generators", gens.len());
        assert!(s.dim() <= 8);

        let probe = int_matrix(&mut rng, r, c);
        let mut with = gens.clone();
        with.push(probe.clone());
        let inside = oracle_dim(&with) == d;
        assert_eq!(s.contains(&probe).unwrap(), inside);

        let mut combo = CMatrix::zeros(r, c);
        for g in &gens {
            combo += g * C64::new(small_int(&mut rng), small_int(&mut rng));
        }
        assert!(s.contains(&combo).unwrap());

        let t = MatSubspace::span(r, c, &with, DEFAULT_TOL).unwrap();
        assert_eq!(t.equals(&s).unwrap(), inside);
        assert!(t.contains_space(&s).unwrap());
        checked += 1;
    }
    assert!(checked >= 1000);
}

#[test]
fn product_span_agrees_with_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.random_range(1..=3);
        let a: Vec<CMatrix> = (0..rng.random_range(1..=3)).map(|_| int_matrix(&mut rng, n, n)).collect();
        let b: Vec<CMatrix> = (0..rng.random_range(1..=3)).map(|_| int_matrix(&mut rng, n, n)).collect();
        let sa = MatSubspace::span(n, n, &a, DEFAULT_TOL).unwrap();
        let sb = MatSubspace::span(n, n, &b, DEFAULT_TOL).unwrap();
        let products: Vec<CMatrix> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        assert_eq!(sa.product_span(&sb).unwrap().dim(), oracle_dim(&products));
    }
}
