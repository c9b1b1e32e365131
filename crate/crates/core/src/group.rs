//! Finite groups given by Cayley tables.

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite group on the elements `0..order`, with `table[s][t] = s·t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a Cayley table and compute identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (s, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {s} has length {}", row.len())));
            }
            if !is_permutation(row) {
                return Err(Error::NotAGroup(format!("row {s} is not a permutation")));
            }
        }
        for t in 0..n {
            let col: Vec<usize> = (0..n).map(|s| table[s][t]).collect();
            if !is_permutation(&col) {
                return Err(Error::NotAGroup(format!("column {t} is not a permutation")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|t| table[e][t] == t && table[t][e] == t))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for t in 0..n {
            inverse[t] = (0..n)
                .find(|&u| table[t][u] == identity && table[u][t] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {t} has no inverse")))?;
        }
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    if table[table[r][s]][t] != table[r][table[s][t]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({r}, {s}, {t})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            table,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|s| (0..n).map(|t| (s + t) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// Z₂×Z₂ with element index 2a + b for the pair (a, b).
    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// The symmetric group on three letters, elements ordered lexicographically as permutations.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("S3 table is a group")
    }

    /// G×H with element index g·|H| + h.
    pub fn direct_product(g: &Self, h: &Self) -> Self {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|s| {
                (0..n * m)
                    .map(|t| g.mul(s / m, t / m) * m + h.mul(s % m, t % m))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("direct product is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s][t]
    }

    pub fn inv(&self, t: usize) -> usize {
        self.inverse[t]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, t: usize) -> usize {
        let mut k = 1;
        let mut x = t;
        while x != self.identity {
            x = self.mul(x, t);
            k += 1;
        }
        k
    }

    pub fn is_automorphism(&self, f: &[usize]) -> bool {
        let n = self.order();
        f.len() == n
            && is_permutation(f)
            && (0..n).all(|s| (0..n).all(|t| f[self.mul(s, t)] == self.mul(f[s], f[t])))
    }

    /// All automorphisms, sorted lexicographically as permutation arrays.
    ///
    /// Backtracking over images in increasing element order; each candidate
    /// image must have the same element order, and every product of already
    /// assigned elements must be respected as soon as both factors are fixed.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let orders: Vec<usize> = (0..n).map(|t| self.element_order(t)).collect();
        let mut out = Vec::new();
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(0, &orders, &mut f, &mut used, &mut out);
        out.sort();
        out
    }

    fn extend(
        &self,
        k: usize,
        orders: &[usize],
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.order();
        if k == n {
            if self.is_automorphism(f) {
                out.push(f.clone());
            }
            return;
        }
        for image in 0..n {
            if used[image] || orders[image] != orders[k] {
                continue;
            }
            if k == self.identity && image != self.identity {
                continue;
            }
            f[k] = image;
            if self.consistent_upto(k, f) {
                used[image] = true;
                self.extend(k + 1, orders, f, used, out);
                used[image] = false;
            }
            f[k] = usize::MAX;
        }
    }

    /// Homomorphism constraints among the elements 0..=k.
    fn consistent_upto(&self, k: usize, f: &[usize]) -> bool {
        (0..=k).all(|s| {
            [(s, k), (k, s)].iter().all(|&(a, b)| {
                let p = self.mul(a, b);
                p > k || f[p] == self.mul(f[a], f[b])
            })
        })
    }

    pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
        g.iter().map(|&x| f[x]).collect()
    }

    pub fn invert_permutation(f: &[usize]) -> Vec<usize> {
        let mut out = vec![0; f.len()];
        for (i, &x) in f.iter().enumerate() {
            out[x] = i;
        }
        out
    }

    /// The inversion map t ↦ t⁻¹ (an automorphism exactly when the group is abelian).
    pub fn inversion(&self) -> Vec<usize> {
        self.inverse.clone()
    }
}

fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    for &x in row {
        if x >= row.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}
