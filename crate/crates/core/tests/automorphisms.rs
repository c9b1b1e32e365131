//! Automorphism enumeration against brute force over all permutations.

use morita_core::FiniteGroup;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn brute_force(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = permutations(g.order())
        .into_iter()
        .filter(|f| {
            g.elements()
                .all(|s| g.elements().all(|t| f[g.mul(s, t)] == g.mul(f[s], f[t])))
        })
        .collect();
    out.sort();
    out
}

#[test]
fn counts_match_brute_force() {
    let cases = [
        ("Z2", FiniteGroup::cyclic(2), 1),
        ("Z3", FiniteGroup::cyclic(3), 2),
        ("Z4", FiniteGroup::cyclic(4), 2),
        ("Z2xZ2", FiniteGroup::klein(), 6),
        ("S3", FiniteGroup::s3(), 6),
    ];
    for (name, g, expected) in cases {
        let auts = g.automorphisms();
        assert_eq!(auts.len(), expected, "{name}");
        assert_eq!(auts, brute_force(&g), "{name}");
    }
}

#[test]
fn larger_groups_match_brute_force() {
    for g in [FiniteGroup::cyclic(5), FiniteGroup::cyclic(6), FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3))] {
        assert_eq!(g.automorphisms(), brute_force(&g));
    }
}
