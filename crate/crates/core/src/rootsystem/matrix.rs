//! Explicit matrix realization of `so(2ℓ)` and `so(2ℓ+1)`.
//!
//! The algebra is `{X : XᵀJ + JX = 0}` where `J` pairs index `i` with `i+ℓ`
//! and, for type B, carries `J[o][o] = -1/2` on the extra index `o = 2ℓ`.
//! That diagonal value makes the short root vectors a Chevalley basis over the
//! rationals with `[e_{ε_ℓ}, e_{ε_1}] = -2 e_{ε_1+ε_ℓ}`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::label::RootLabel;
use super::AlgebraType;
use crate::scalar::{q, qf, Q};

pub type Mat = Vec<Vec<Q>>;

pub fn zeros(n: usize) -> Mat {
    vec![vec![Q::zero(); n]; n]
}

fn unit(n: usize, i: usize, j: usize, c: Q) -> Mat {
    let mut m = zeros(n);
    m[i][j] = c;
    m
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn scale(a: &Mat, c: &Q) -> Mat {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    add(&mul(a, b), &scale(&mul(b, a), &q(-1)))
}

pub fn trace(a: &Mat) -> Q {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

pub fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Matrices of the Chevalley basis in the defining representation.
pub struct Realization {
    pub size: usize,
    pub form_matrix: Mat,
    pub root_vectors: HashMap<RootLabel, Mat>,
    /// Simple coroots `h_1..h_ℓ`.
    pub coroots: Vec<Mat>,
}

impl Realization {
    pub fn new(kind: AlgebraType, rank: usize) -> Self {
        let l = rank;
        let n = match kind {
            AlgebraType::D => 2 * l,
            AlgebraType::B => 2 * l + 1,
        };
        let o = 2 * l;
        let mid = qf(-1, 2);
        let mut form_matrix = zeros(n);
        for i in 0..l {
            form_matrix[i][i + l] = Q::one();
            form_matrix[i + l][i] = Q::one();
        }
        if kind == AlgebraType::B {
            form_matrix[o][o] = mid.clone();
        }
        let e = |i, j| unit(n, i, j, Q::one());
        let big_h = |i: usize| add(&e(i, i), &scale(&e(i + l, i + l), &q(-1)));

        let mut coroots = Vec::new();
        for i in 0..l {
            let h = if i + 1 < l {
                add(&big_h(i), &scale(&big_h(i + 1), &q(-1)))
            } else {
                match kind {
                    AlgebraType::D => add(&big_h(l - 2), &big_h(l - 1)),
                    AlgebraType::B => scale(&big_h(l - 1), &q(2)),
                }
            };
            coroots.push(h);
        }

        // positive root vectors and candidates for the opposite root spaces
        let mut pairs: Vec<(RootLabel, Mat, Mat, Mat)> = Vec::new();
        for i in 0..l {
            for j in i + 1..l {
                let (a, b) = (i as u8 + 1, j as u8 + 1);
                let pm = add(&e(i, j), &scale(&e(j + l, i + l), &q(-1)));
                let pp = add(&e(i, j + l), &scale(&e(j, i + l), &q(-1)));
                let h_pm = add(&big_h(i), &scale(&big_h(j), &q(-1)));
                let h_pp = add(&big_h(i), &big_h(j));
                pairs.push((RootLabel::minus(a, b), pm.clone(), transpose(&pm), h_pm));
                pairs.push((RootLabel::plus(a, b), pp.clone(), transpose(&pp), h_pp));
            }
            if kind == AlgebraType::B {
                let inv = Q::one() / &mid;
                let pos = add(&e(i, o), &scale(&e(o, i + l), &(-inv)));
                let neg = add(&e(o, i), &scale(&e(i + l, o), &(-mid.clone())));
                let h = scale(&big_h(i), &q(2));
                pairs.push((RootLabel::short(i as u8 + 1), pos, neg, h));
            }
        }
        let mut root_vectors = HashMap::new();
        for (label, pos, cand, h) in pairs {
            // rescale the negative vector so that [e_α, e_{-α}] = h_α
            let c = commutator(&pos, &cand);
            let (pi, pj) = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| !h[i][j].is_zero())
                .unwrap();
            let s = &h[pi][pj] / &c[pi][pj];
            let neg = scale(&cand, &s);
            debug_assert_eq!(commutator(&pos, &neg), h);
            root_vectors.insert(label, pos);
            root_vectors.insert(label.neg(), neg);
        }
        Realization {
            size: n,
            form_matrix,
            root_vectors,
            coroots,
        }
    }

    /// `XᵀJ + JX = 0`.
    pub fn preserves_form(&self, x: &Mat) -> bool {
        let a = mul(&transpose(x), &self.form_matrix);
        let b = mul(&self.form_matrix, x);
        is_zero(&add(&a, &b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_basis_matrices_lie_in_the_algebra() {
        for (kind, l) in [(AlgebraType::D, 4), (AlgebraType::B, 3)] {
            let r = Realization::new(kind, l);
            for m in r.root_vectors.values().chain(r.coroots.iter()) {
                assert!(r.preserves_form(m));
            }
        }
    }

    #[test]
    fn short_root_normalization() {
        let r = Realization::new(AlgebraType::B, 3);
        let e3 = &r.root_vectors[&RootLabel::short(3)];
        let e1 = &r.root_vectors[&RootLabel::short(1)];
        let e13 = &r.root_vectors[&RootLabel::plus(1, 3)];
        assert_eq!(commutator(e3, e1), scale(e13, &q(-2)));
    }
}
