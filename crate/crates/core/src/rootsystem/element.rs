use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{DatumKey, RootDatum};
use crate::error::{Error, Result};
use crate::scalar::{accumulate, q, Q};
use crate::weight::WeightFunctional;

/// An element of `g` in Chevalley-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    key: DatumKey,
    terms: BTreeMap<usize, Q>,
}

impl LieElement {
    pub fn zero(d: &RootDatum) -> Self {
        LieElement {
            key: d.key(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(d: &RootDatum, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(i, Q::one());
        LieElement { key: d.key(), terms }
    }

    pub fn from_terms(d: &RootDatum, terms: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut m = BTreeMap::new();
        for (i, c) in terms {
            assert!(i < d.dim());
            accumulate(&mut m, i, c);
        }
        LieElement {
            key: d.key(),
            terms: m,
        }
    }

    pub fn key(&self) -> DatumKey {
        self.key
    }

    pub fn terms(&self) -> &BTreeMap<usize, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.terms.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.key != other.key {
            return Err(Error::DatumMismatch(self.key.to_string(), other.key.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (i, c) in &other.terms {
            accumulate(&mut terms, *i, c.clone());
        }
        Ok(LieElement { key: self.key, terms })
    }

    pub fn scale(&self, c: &Q) -> Self {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(i, x)| (*i, x * c)).collect()
        };
        LieElement { key: self.key, terms }
    }

    pub fn display(&self, d: &RootDatum) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| {
                if c.is_one() {
                    d.label(*i).to_string()
                } else {
                    format!("{c}*{}", d.label(*i))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(i, c)| format!("{c}*x{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl RootDatum {
    fn owns(&self, x: &LieElement) -> Result<()> {
        if x.key != self.key() {
            return Err(Error::DatumMismatch(self.key().to_string(), x.key.to_string()));
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.owns(x)?;
        self.owns(y)?;
        let mut terms = BTreeMap::new();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                for (t, n) in self.bracket_basis(*a, *b) {
                    accumulate(&mut terms, *t, ca * cb * q(*n));
                }
            }
        }
        Ok(LieElement { key: self.key(), terms })
    }

    /// The common weight of all terms, or [`Error::NotHomogeneous`].
    pub fn weight_of(&self, x: &LieElement) -> Result<WeightFunctional> {
        self.owns(x)?;
        let mut it = x.terms.keys();
        let first = it.next().ok_or(Error::NotHomogeneous)?;
        let w = self.weight(*first);
        if it.any(|i| self.weight(*i) != w) {
            return Err(Error::NotHomogeneous);
        }
        Ok(WeightFunctional::from_ints(w))
    }

    /// Invariant form extended bilinearly.
    pub fn form_of(&self, x: &LieElement, y: &LieElement) -> Result<Q> {
        self.owns(x)?;
        self.owns(y)?;
        let mut s = Q::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let f = self.form(*a, *b);
                if !f.is_zero() {
                    s += ca * cb * f;
                }
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{AlgebraType, RootLabel};

    #[test]
    fn cartan_action_on_simple_roots() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                let h = LieElement::basis(&d, d.coroot(i));
                let e = LieElement::basis(&d, d.simple_root(j));
                let a_ji = d.cartan_matrix()[j - 1][i - 1];
                assert_eq!(d.bracket(&h, &e).unwrap(), e.scale(&q(a_ji)));
            }
        }
    }

    #[test]
    fn highest_root_bracket_is_its_coroot() {
        let d = RootDatum::build(AlgebraType::D, 5).unwrap();
        let e = LieElement::basis(&d, d.highest_root());
        let f = LieElement::basis(&d, d.lowest_root());
        let h = d.bracket(&e, &f).unwrap();
        let expect = LieElement::from_terms(
            &d,
            [(1, 1), (2, 2), (3, 2), (4, 1), (5, 1)]
                .iter()
                .map(|&(i, c)| (d.coroot(i), q(c))),
        );
        assert_eq!(h, expect);
    }

    #[test]
    fn weights_and_homogeneity() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        let a1 = LieElement::basis(&d, d.root(RootLabel::minus(1, 2)));
        let w = d.weight_of(&a1).unwrap();
        assert_eq!(w, WeightFunctional::from_ints(&[2, -1, 0, 0]));
        let h3 = LieElement::basis(&d, d.coroot(3));
        assert_eq!(d.weight_of(&h3).unwrap(), WeightFunctional::from_ints(&[0, 0, 0, 0]));
        let a2 = LieElement::basis(&d, d.root(RootLabel::minus(2, 3)));
        assert!(matches!(
            d.weight_of(&a1.add(&a2).unwrap()),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn mismatched_data_rejected() {
        let d4 = RootDatum::build(AlgebraType::D, 4).unwrap();
        let b3 = RootDatum::build(AlgebraType::B, 3).unwrap();
        let x = LieElement::basis(&d4, 0);
        let y = LieElement::basis(&b3, 0);
        assert!(matches!(d4.bracket(&x, &y), Err(Error::DatumMismatch(..))));
        assert!(x.add(&y).is_err());
    }
}
