//! Exact linear algebra over the rationals: dense row reduction and a sparse
//! reduced-echelon basis keyed by arbitrary ordered column labels.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::{accumulate, Q};

pub type SparseVec<K> = BTreeMap<K, Q>;

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Solution set of `A x = b` as a particular solution plus a kernel basis,
/// or `None` if inconsistent.
pub fn solve_affine(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in aug.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    Some((x, kernel))
}

/// Rank of a list of dense vectors.
pub fn rank(vectors: &[Vec<Q>], ncols: usize) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m, ncols).len()
}

/// A subspace held as a sparse reduced row echelon basis. The pivot of each
/// row is its smallest key with coefficient one, and no row mentions another
/// row's pivot.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    /// Normal form of `v` modulo the subspace; supported on non-pivot keys.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        let hits: Vec<(K, Q)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        for (p, c) in hits {
            for (k, x) in &self.rows[&p] {
                accumulate(&mut out, k.clone(), -(&c * x));
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((p, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        if !lead.is_one() {
            let inv = Q::one() / lead;
            for x in r.values_mut() {
                *x *= &inv;
            }
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                for (k, x) in &r {
                    accumulate(row, k.clone(), -(&c * x));
                }
            }
        }
        self.rows.insert(p, r);
        true
    }
}

/// Kernel of the linear map whose `j`-th column is `cols[j]`; each kernel
/// vector is returned as sparse coordinates over column indices.
pub fn sparse_kernel<K: Ord + Clone>(cols: &[SparseVec<K>]) -> Vec<BTreeMap<usize, Q>> {
    // echelon rows with pivot = smallest key, each tagged with the column
    // combination that produced it
    let mut rows: BTreeMap<K, (SparseVec<K>, BTreeMap<usize, Q>)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut comb = BTreeMap::new();
        comb.insert(j, Q::one());
        loop {
            let hit = v
                .iter()
                .find(|(k, _)| rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((p, c)) = hit else { break };
            let (row, rc) = &rows[&p];
            for (k, x) in row {
                accumulate(&mut v, k.clone(), -(&c * x));
            }
            for (k, x) in rc {
                accumulate(&mut comb, *k, -(&c * x));
            }
        }
        match v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            None => kernel.push(comb),
            Some((p, lead)) => {
                let inv = Q::one() / lead;
                for x in v.values_mut() {
                    *x *= &inv;
                }
                for x in comb.values_mut() {
                    *x *= &inv;
                }
                rows.insert(p, (v, comb));
            }
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn sv(pairs: &[(u32, i64)]) -> SparseVec<u32> {
        pairs.iter().map(|&(k, c)| (k, q(c))).collect()
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(&sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&sv(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.dim(), 2);
        assert!(e.contains(&sv(&[(0, 2), (1, 4)])));
        assert!(!e.contains(&sv(&[(2, 1)])));
        // reduced remainder avoids pivots
        let r = e.reduce(&sv(&[(0, 1), (2, 5)]));
        assert!(r.keys().all(|k| !e.is_pivot(k)));
    }

    #[test]
    fn kernel_of_columns() {
        // columns: a, b, a+b
        let cols = vec![sv(&[(0, 1)]), sv(&[(1, 1)]), sv(&[(0, 1), (1, 1)])];
        let k = sparse_kernel(&cols);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[&0], q(-1));
        assert_eq!(v[&1], q(-1));
        assert_eq!(v[&2], q(1));
    }

    #[test]
    fn affine_solve() {
        // x + y = 2, y - z = 0
        let a = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(-1)]];
        let (x, ker) = solve_affine(&a, &[q(2), q(0)], 3).unwrap();
        assert_eq!(x, vec![q(2), q(0), q(0)]);
        assert_eq!(ker, vec![vec![q(-1), q(1), q(1)]]);
        // inconsistent
        let a = vec![vec![q(1)], vec![q(1)]];
        assert!(solve_affine(&a, &[q(0), q(1)], 1).is_none());
    }
}
