//! The universal enveloping algebra `U(g)` in PBW normal form, the adjoint
//! action, adjoint-generated submodules and their zero-weight polynomials.

mod adjoint;
mod hpoly;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rootsystem::{DatumKey, LieElement, RootDatum};
use crate::scalar::{accumulate, parse_q, q, Q};
use crate::text;
use crate::weight::WeightFunctional;

pub use adjoint::AdjointModule;
pub use hpoly::{reduced_basis, span_contains, HPolynomial, Monomial};

/// A PBW monomial: basis indices in non-decreasing order.
pub type Word = Vec<usize>;

/// Which descent the straightening step rewrites first. Both orders reach
/// the same normal form; the choice only matters for cross-checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Rewrite {
    #[default]
    FirstDescent,
    LastDescent,
}

/// Exact sparse element of `U(g)` in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvElement {
    key: DatumKey,
    terms: BTreeMap<Word, Q>,
}

fn descent(w: &[usize], r: Rewrite) -> Option<usize> {
    let mut it = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
    match r {
        Rewrite::FirstDescent => it.next(),
        Rewrite::LastDescent => it.next_back(),
    }
}

impl RootDatum {
    /// Straightens arbitrary words with `xy = yx + [x,y]`.
    pub fn normalize_words(&self, input: BTreeMap<Word, Q>, r: Rewrite) -> BTreeMap<Word, Q> {
        let mut pending = input;
        let mut out = BTreeMap::new();
        while let Some((w, c)) = pending.pop_last() {
            let Some(i) = descent(&w, r) else {
                accumulate(&mut out, w, c);
                continue;
            };
            let mut s = w.clone();
            s.swap(i, i + 1);
            for (t, n) in self.bracket_basis(w[i], w[i + 1]) {
                let mut b = Vec::with_capacity(w.len() - 1);
                b.extend_from_slice(&w[..i]);
                b.push(*t);
                b.extend_from_slice(&w[i + 2..]);
                accumulate(&mut pending, b, &c * q(*n));
            }
            accumulate(&mut pending, s, c);
        }
        out
    }

    fn owns_env(&self, a: &EnvElement) -> Result<()> {
        if a.key != self.key() {
            return Err(Error::DatumMismatch(self.key().to_string(), a.key.to_string()));
        }
        Ok(())
    }

    pub fn env_product(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        self.env_product_with(a, b, Rewrite::default())
    }

    pub fn env_product_with(&self, a: &EnvElement, b: &EnvElement, r: Rewrite) -> Result<EnvElement> {
        self.owns_env(a)?;
        self.owns_env(b)?;
        let mut words = BTreeMap::new();
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                accumulate(&mut words, w, x * y);
            }
        }
        Ok(EnvElement {
            key: self.key(),
            terms: self.normalize_words(words, r),
        })
    }

    /// `ad(x) f = xf - fx`.
    pub fn adjoint_act(&self, x: &LieElement, f: &EnvElement) -> Result<EnvElement> {
        if x.key() != self.key() {
            return Err(Error::DatumMismatch(self.key().to_string(), x.key().to_string()));
        }
        let xe = EnvElement::from_lie(x);
        let l = self.env_product(&xe, f)?;
        let r = self.env_product(f, &xe)?;
        Ok(l.sub(&r))
    }

    fn adjoint_basis(&self, x: usize, f: &EnvElement) -> EnvElement {
        self.adjoint_act(&LieElement::basis(self, x), f)
            .expect("same datum")
    }

    pub fn word_weight(&self, w: &[usize]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for &x in w {
            for (o, v) in out.iter_mut().zip(self.weight(x)) {
                *o += v;
            }
        }
        out
    }

    /// Parses `coeff * F(...) H(i) E(...) + ...`; the factors need not be in
    /// PBW order, the product is normalized.
    pub fn parse_env(&self, s: &str) -> Result<EnvElement> {
        let mut words = BTreeMap::new();
        for t in text::parse_terms(s)? {
            if t.vacuum {
                return Err(Error::Parse(format!("vacuum in an enveloping-algebra element `{s}`")));
            }
            let mut c = match &t.coeff {
                Some(c) => parse_q(c)?,
                None => Q::one(),
            };
            if t.negative {
                c = -c;
            }
            let mut w = Vec::new();
            for (head, suffix) in &t.factors {
                if !suffix.is_empty() {
                    return Err(Error::Parse(format!("mode index on `{head}` in `{s}`")));
                }
                w.push(self.parse_label(head)?);
            }
            accumulate(&mut words, w, c);
        }
        Ok(EnvElement {
            key: self.key(),
            terms: self.normalize_words(words, Rewrite::default()),
        })
    }
}

impl EnvElement {
    pub fn zero(d: &RootDatum) -> Self {
        EnvElement {
            key: d.key(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: &RootDatum) -> Self {
        Self::monomial(d, Vec::new(), Q::one())
    }

    pub fn basis(d: &RootDatum, i: usize) -> Self {
        Self::monomial(d, vec![i], Q::one())
    }

    /// `c · x_{w_1} ··· x_{w_m}` for an arbitrary word, normalized.
    pub fn word(d: &RootDatum, w: &[usize], c: Q) -> Self {
        let mut m = BTreeMap::new();
        accumulate(&mut m, w.to_vec(), c);
        EnvElement {
            key: d.key(),
            terms: d.normalize_words(m, Rewrite::default()),
        }
    }

    fn monomial(d: &RootDatum, w: Word, c: Q) -> Self {
        debug_assert!(w.windows(2).all(|p| p[0] <= p[1]));
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, w, c);
        EnvElement { key: d.key(), terms }
    }

    pub fn from_lie(x: &LieElement) -> Self {
        EnvElement {
            key: x.key(),
            terms: x.terms().iter().map(|(i, c)| (vec![*i], c.clone())).collect(),
        }
    }

    /// Builds from monomials already in PBW order.
    pub fn from_normal_terms(d: &RootDatum, terms: BTreeMap<Word, Q>) -> Result<Self> {
        for w in terms.keys() {
            if w.windows(2).any(|p| p[0] > p[1]) || w.iter().any(|&x| x >= d.dim()) {
                return Err(Error::Invalid(format!("word {w:?} is not a PBW monomial")));
            }
        }
        Ok(EnvElement {
            key: d.key(),
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn key(&self) -> DatumKey {
        self.key
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[usize]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.key, other.key, "elements over different root data");
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut terms, w.clone(), c.clone());
        }
        EnvElement { key: self.key, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect()
        };
        EnvElement { key: self.key, terms }
    }

    /// Common weight of all monomials.
    pub fn weight(&self, d: &RootDatum) -> Result<WeightFunctional> {
        let mut it = self.terms.keys();
        let first = d.word_weight(it.next().ok_or(Error::NotHomogeneous)?);
        if it.any(|w| d.word_weight(w) != first) {
            return Err(Error::NotHomogeneous);
        }
        Ok(WeightFunctional::from_ints(&first))
    }

    /// Text form, e.g. `E(-1,+2) E(+1,-2) + H(1)`; parsed back by
    /// [`RootDatum::parse_env`].
    pub fn display(&self, d: &RootDatum) -> String {
        let parts = self
            .terms
            .iter()
            .map(|(w, c)| {
                let factors: Vec<String> = w.iter().map(|&x| d.label(x).to_string()).collect();
                let f = factors.join(" ");
                if w.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    f
                } else if (-c).is_one() {
                    format!("-{f}")
                } else {
                    format!("{c} * {f}")
                }
            })
            .collect();
        text::join_terms(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{AlgebraType, RootLabel};

    fn d4() -> RootDatum {
        RootDatum::build(AlgebraType::D, 4).unwrap()
    }

    #[test]
    fn single_straightening_step() {
        let d = d4();
        let e = d.root(RootLabel::minus(1, 2));
        let f = d.root(RootLabel::minus(1, 2).neg());
        let p = d
            .env_product(&EnvElement::basis(&d, e), &EnvElement::basis(&d, f))
            .unwrap();
        let mut expect = BTreeMap::new();
        expect.insert(vec![f, e], q(1));
        expect.insert(vec![d.coroot(1)], q(1));
        assert_eq!(p.terms(), &expect);
    }

    #[test]
    fn unit_and_zero() {
        let d = d4();
        let a = d.parse_env("2 * E(+1,-2) H(3) - 1/3 * F(+2,+3)").unwrap();
        assert_eq!(d.env_product(&EnvElement::one(&d), &a).unwrap(), a);
        assert_eq!(d.env_product(&a, &EnvElement::one(&d)).unwrap(), a);
        assert!(d.env_product(&EnvElement::zero(&d), &a).unwrap().is_zero());
    }

    #[test]
    fn adjoint_on_unit_and_cartan() {
        let d = d4();
        let one = EnvElement::one(&d);
        for x in 0..d.dim() {
            assert!(d.adjoint_act(&LieElement::basis(&d, x), &one).unwrap().is_zero());
        }
        let m = d.parse_env("E(+1,-2) E(+1,+2) E(+3,-4)").unwrap();
        let w = m.weight(&d).unwrap();
        for i in 1..=4 {
            let h = LieElement::basis(&d, d.coroot(i));
            let expect = m.scale(&w.constant_part()[i - 1]);
            assert_eq!(d.adjoint_act(&h, &m).unwrap(), expect);
        }
    }

    #[test]
    fn text_roundtrip() {
        let d = d4();
        let a = d
            .parse_env("E(+1,+2) F(+1,+2) - 3/2 * H(2) H(1) + 7 + E(-3,-4)")
            .unwrap();
        let s = a.display(&d);
        assert_eq!(d.parse_env(&s).unwrap(), a);
        assert_eq!(d.parse_env("0").unwrap(), EnvElement::zero(&d));
        assert!(d.parse_env("E(+1,-2)(-1)").is_err());
        assert!(d.parse_env("E(+1,+5)").is_err());
    }

    #[test]
    fn both_rewrite_orders_agree() {
        let d = d4();
        let w: Vec<usize> = vec![d.highest_root(), 3, d.coroot(2), 0, d.dim() - 3, 1];
        let mut m = BTreeMap::new();
        m.insert(w, q(1));
        assert_eq!(
            d.normalize_words(m.clone(), Rewrite::FirstDescent),
            d.normalize_words(m, Rewrite::LastDescent)
        );
    }
}
