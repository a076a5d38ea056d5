//! Splitting polynomials of degree at most two into affine-linear factors
//! over the rationals.

use num_traits::{One, Signed, Zero};

use crate::envalg::HPolynomial;
use crate::error::{Error, Result};
use crate::scalar::Q;

/// `c_0 + Σ c_i h_i`, stored as `[c_0, c_1, ..., c_ℓ]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(pub Vec<Q>);

impl LinearForm {
    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.0[1..].iter().all(Zero::is_zero)
    }

    /// Scaled so the first nonzero variable coefficient is one.
    pub fn normalized(&self) -> Self {
        match self.0[1..].iter().find(|c| !c.is_zero()) {
            Some(c) => {
                let inv = Q::one() / c;
                LinearForm(self.0.iter().map(|x| x * &inv).collect())
            }
            None => self.clone(),
        }
    }

    pub fn to_poly(&self) -> HPolynomial {
        HPolynomial::linear(self.0[0].clone(), &self.0[1..])
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.0[0].clone() + self.0[1..].iter().zip(x).map(|(c, v)| c * v).sum::<Q>()
    }
}

impl std::fmt::Display for LinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.to_poly().fmt(f)
    }
}

/// Symmetric matrix of the homogenized quadratic, variable 0 = constant.
fn quadratic_matrix(p: &HPolynomial) -> Vec<Vec<Q>> {
    let n = p.rank() + 1;
    let mut m = vec![vec![Q::zero(); n]; n];
    let half = Q::new(1.into(), 2.into());
    for (mono, c) in p.terms() {
        let mut vars: Vec<usize> = Vec::new();
        for (i, &e) in mono.0.iter().enumerate() {
            for _ in 0..e {
                vars.push(i + 1);
            }
        }
        while vars.len() < 2 {
            vars.insert(0, 0);
        }
        let (a, b) = (vars[0], vars[1]);
        if a == b {
            m[a][a] += c;
        } else {
            m[a][b] += c * &half;
            m[b][a] += c * &half;
        }
    }
    m
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Q::new(sn, sd))
}

/// `L` with `L Lᵀ = r`, if `r` is the square of a linear form.
fn square_root_form(r: &[Vec<Q>]) -> Option<Vec<Q>> {
    let n = r.len();
    let Some(k) = (0..n).find(|&k| !r[k][k].is_zero()) else {
        return r.iter().all(|row| row.iter().all(Zero::is_zero)).then(|| vec![Q::zero(); n]);
    };
    let s = rational_sqrt(&r[k][k])?;
    let l: Vec<Q> = (0..n).map(|m| &r[k][m] / &s).collect();
    for a in 0..n {
        for b in 0..n {
            if &l[a] * &l[b] != r[a][b] {
                return None;
            }
        }
    }
    Some(l)
}

/// Factors a homogeneous quadratic `xᵀ m x` as a product of two linear
/// forms (coefficient vectors over the homogenized variables).
fn split_quadratic(m: &[Vec<Q>]) -> Option<(Vec<Q>, Vec<Q>)> {
    let n = m.len();
    if let Some(i) = (0..n).find(|&i| !m[i][i].is_zero()) {
        let a = &m[i][i];
        // p = (1/a) [(a x_i + B)^2 - R],  R = B^2 - a C
        let mut r = vec![vec![Q::zero(); n]; n];
        for k in 0..n {
            for l in 0..n {
                if k == i || l == i {
                    continue;
                }
                r[k][l] = &m[i][k] * &m[i][l] - a * &m[k][l];
            }
        }
        let lf = square_root_form(&r)?;
        let base: Vec<Q> = (0..n).map(|k| m[i][k].clone()).collect();
        let f1: Vec<Q> = (0..n).map(|k| (&base[k] - &lf[k]) / a).collect();
        let f2: Vec<Q> = (0..n).map(|k| &base[k] + &lf[k]).collect();
        return Some((f1, f2));
    }
    // no square terms: substitute x_j -> x_j + x_i to create one
    let (i, j) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && !m[i][j].is_zero())?;
    let mut t = m.to_vec();
    // new x_i^2 coefficient: 2 m_ij + m_jj
    for k in 0..n {
        let add = t[j][k].clone();
        t[i][k] += add;
    }
    for k in 0..n {
        let add = t[k][j].clone();
        t[k][i] += add;
    }
    let (g1, g2) = split_quadratic(&t)?;
    // undo: a form c' in the substituted variables is c with c_i = c'_i - c'_j
    let back = |mut c: Vec<Q>| {
        let cj = c[j].clone();
        c[i] -= cj;
        c
    };
    Some((back(g1), back(g2)))
}

/// The distinct affine-linear factors of `p` (up to scaling). A nonzero
/// constant has no factors; the zero polynomial is rejected.
pub fn linear_factors(p: &HPolynomial) -> Result<Vec<LinearForm>> {
    let l = p.rank();
    let not_split = || Error::NotSplit(p.to_string());
    let forms: Vec<LinearForm> = match p.degree() {
        None => return Err(Error::Invalid("the zero polynomial has no factorization".into())),
        Some(0) => return Ok(Vec::new()),
        Some(1) => {
            let mut c = vec![Q::zero(); l + 1];
            for (m, x) in p.terms() {
                match m.0.iter().position(|&e| e == 1) {
                    Some(i) => c[i + 1] = x.clone(),
                    None => c[0] = x.clone(),
                }
            }
            vec![LinearForm(c)]
        }
        Some(2) => {
            let (a, b) = split_quadratic(&quadratic_matrix(p)).ok_or_else(not_split)?;
            vec![LinearForm(a), LinearForm(b)]
        }
        Some(_) => return Err(not_split()),
    };
    let prod = forms
        .iter()
        .fold(HPolynomial::constant(l, Q::one()), |acc, f| acc.mul(&f.to_poly()));
    if prod != *p {
        return Err(not_split());
    }
    let mut out: Vec<LinearForm> = forms
        .into_iter()
        .filter(|f| !f.is_constant())
        .map(|f| f.normalized())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn splits_products() {
        let a = lf(&[2, 1, 2, 1, 1]);
        let b = lf(&[0, 1, 0, 0, 0]);
        let p = a.to_poly().mul(&b.to_poly()).scale(&q(3));
        let mut e = vec![a.normalized(), b.normalized()];
        e.sort();
        assert_eq!(linear_factors(&p).unwrap(), e);
    }

    #[test]
    fn splits_without_square_terms() {
        // (h_1 + 1)(h_2 - 3)
        let p = lf(&[1, 1, 0]).to_poly().mul(&lf(&[-3, 0, 1]).to_poly());
        let mut f = linear_factors(&p).unwrap();
        f.sort();
        let mut e = vec![lf(&[1, 1, 0]), lf(&[-3, 0, 1])];
        e.sort();
        assert_eq!(f, e);
    }

    #[test]
    fn squares_and_constants() {
        let a = lf(&[1, 1, -1]);
        let p = a.to_poly().mul(&a.to_poly());
        assert_eq!(linear_factors(&p).unwrap(), vec![a]);
        assert!(linear_factors(&HPolynomial::constant(2, q(5))).unwrap().is_empty());
    }

    #[test]
    fn irreducible_rejected() {
        // h_1^2 + h_2^2 + 1 and h_1^2 - 2
        let p = HPolynomial::var(2, 1)
            .mul(&HPolynomial::var(2, 1))
            .add(&HPolynomial::var(2, 2).mul(&HPolynomial::var(2, 2)))
            .add(&HPolynomial::constant(2, q(1)));
        assert!(matches!(linear_factors(&p), Err(Error::NotSplit(_))));
        let p = HPolynomial::var(2, 1)
            .mul(&HPolynomial::var(2, 1))
            .sub(&HPolynomial::constant(2, q(2)));
        assert!(matches!(linear_factors(&p), Err(Error::NotSplit(_))));
        let h = HPolynomial::var(2, 1);
        assert!(matches!(linear_factors(&h.mul(&h).mul(&h)), Err(Error::NotSplit(_))));
    }
}
