use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::Echelon;
use crate::poly::UniPoly;
use crate::scalar::{accumulate, Q};
use crate::weight::WeightFunctional;

/// Exponent vector of `h_1^{a_1} ··· h_ℓ^{a_ℓ}`, ordered so that the
/// graded-lexicographic leading monomial (with `h_1 > h_2 > ...`) sorts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the commuting simple coroots `h_1..h_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolynomial {
    rank: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl HPolynomial {
    pub fn zero(rank: usize) -> Self {
        HPolynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: Q) -> Self {
        let mut p = Self::zero(rank);
        accumulate(&mut p.terms, Monomial(vec![0; rank]), c);
        p
    }

    /// `h_i` (1-based).
    pub fn var(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i - 1] = 1;
        let mut p = Self::zero(rank);
        p.terms.insert(Monomial(e), Q::one());
        p
    }

    /// `c_0 + Σ c_i h_i`.
    pub fn linear(c0: Q, coeffs: &[Q]) -> Self {
        let rank = coeffs.len();
        let mut p = Self::constant(rank, c0);
        for (i, c) in coeffs.iter().enumerate() {
            p = p.add(&Self::var(rank, i + 1).scale(c));
        }
        p
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            assert_eq!(e.len(), rank);
            accumulate(&mut p.terms, Monomial(e), c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let mut p = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut p.terms, m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        HPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let mut p = Self::zero(self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.0.iter().zip(&b.0).map(|(u, v)| u + v).collect();
                accumulate(&mut p.terms, Monomial(e), x * y);
            }
        }
        p
    }

    /// Scaled so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&(Q::one() / c)),
            None => self.clone(),
        }
    }

    /// Value at `h_i ↦ x_i`.
    pub fn eval_point(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.rank);
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                for _ in 0..e {
                    v *= xi;
                }
            }
            s += v;
        }
        s
    }

    /// Substitutes `h_i ↦ μ(h_i)`, a polynomial in the weight parameter `t`.
    pub fn evaluate(&self, mu: &WeightFunctional) -> UniPoly {
        assert_eq!(mu.rank(), self.rank);
        let coords: Vec<UniPoly> = (0..self.rank).map(|i| mu.coord(i)).collect();
        let mut s = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut v = UniPoly::constant(c.clone());
            for (xi, &e) in coords.iter().zip(&m.0) {
                for _ in 0..e {
                    v = v * xi.clone();
                }
            }
            s = s + v;
        }
        s
    }
}

impl fmt::Display for HPolynomial {
    /// e.g. `h_1^2 + 2*h_1*h_2 - h_1 + 3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| match e {
                        1 => format!("h_{}", i + 1),
                        _ => format!("h_{}^{e}", i + 1),
                    })
                    .collect();
                let v = vars.join("*");
                let sign = if c.is_negative() { "-" } else { "" };
                let a = c.abs();
                if v.is_empty() {
                    format!("{sign}{a}")
                } else if a.is_one() {
                    format!("{sign}{v}")
                } else {
                    format!("{sign}{a}*{v}")
                }
            })
            .collect();
        f.write_str(&crate::text::join_terms(parts))
    }
}

/// Reduced row echelon basis of the span, each element monic with a
/// distinct leading monomial; ordered by leading monomial.
pub fn reduced_basis(polys: &[HPolynomial]) -> Vec<HPolynomial> {
    let Some(rank) = polys.first().map(HPolynomial::rank) else {
        return Vec::new();
    };
    let mut e: Echelon<Monomial> = Echelon::new();
    for p in polys {
        e.insert(&p.terms);
    }
    e.rows()
        .map(|r| HPolynomial {
            rank,
            terms: r.clone(),
        })
        .collect()
}

/// Whether every polynomial of `a` lies in the span of `b`.
pub fn span_contains(b: &[HPolynomial], a: &[HPolynomial]) -> bool {
    let mut e: Echelon<Monomial> = Echelon::new();
    for p in b {
        e.insert(&p.terms);
    }
    a.iter().all(|p| e.contains(&p.terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn grlex_leading_term_first() {
        let h1 = HPolynomial::var(3, 1);
        let h2 = HPolynomial::var(3, 2);
        let p = h2.mul(&h2).add(&h1.mul(&h2)).add(&h1).add(&HPolynomial::constant(3, q(3)));
        assert_eq!(p.to_string(), "h_1*h_2 + h_2^2 + h_1 + 3");
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let a = HPolynomial::linear(q(2), &[q(1), q(-1), q(0)]);
        let b = HPolynomial::linear(q(-1), &[q(0), q(3), q(1)]);
        let mu = WeightFunctional::affine(vec![q(1), q(0), q(2)], vec![q(0), q(1), q(-1)]);
        assert_eq!(a.mul(&b).evaluate(&mu), a.evaluate(&mu) * b.evaluate(&mu));
        assert_eq!(a.add(&b).evaluate(&mu), a.evaluate(&mu) + b.evaluate(&mu));
        assert_eq!(a.eval_point(&[q(0), q(0), q(0)]), q(2));
    }

    #[test]
    fn reduced_basis_spans() {
        let a = HPolynomial::linear(q(2), &[q(1), q(-1)]);
        let b = HPolynomial::linear(q(0), &[q(0), q(3)]);
        let basis = reduced_basis(&[a.clone(), b.clone(), a.add(&b)]);
        assert_eq!(basis.len(), 2);
        assert!(span_contains(&basis, &[a, b]));
    }
}
