use std::collections::{BTreeMap, VecDeque};

use super::hpoly::{reduced_basis, HPolynomial};
use super::{EnvElement, Word};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rootsystem::{LieElement, RootDatum};
use crate::scalar::{accumulate, Q};
use crate::weight::WeightFunctional;

/// The submodule of `U(g)` generated by a highest-weight vector under the
/// adjoint action, one echelon basis per weight.
#[derive(Clone, Debug)]
pub struct AdjointModule {
    generator: EnvElement,
    highest_weight: WeightFunctional,
    spaces: BTreeMap<Vec<i64>, Echelon<Word>>,
}

impl RootDatum {
    /// Saturates `u` under `ad(f_i)`; rejects `u` unless every `ad(e_i)`
    /// kills it.
    pub fn generate_adjoint_module(&self, u: &EnvElement) -> Result<AdjointModule> {
        if u.key() != self.key() {
            return Err(Error::DatumMismatch(self.key().to_string(), u.key().to_string()));
        }
        let w = u.weight(self)?;
        for i in 1..=self.rank() {
            if !self.adjoint_basis(self.simple_root(i), u).is_zero() {
                return Err(Error::NotHighestWeight(format!(
                    "α_{i} = {}",
                    self.label(self.simple_root(i))
                )));
            }
        }
        let mut spaces: BTreeMap<Vec<i64>, Echelon<Word>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let top = self.word_weight(u.terms().keys().next().unwrap());
        spaces.entry(top).or_default().insert(u.terms());
        queue.push_back(u.clone());
        while let Some(v) = queue.pop_front() {
            for i in 1..=self.rank() {
                let g = self.adjoint_basis(self.simple_neg_root(i), &v);
                if g.is_zero() {
                    continue;
                }
                let wt = self.word_weight(g.terms().keys().next().unwrap());
                if spaces.entry(wt).or_default().insert(g.terms()) {
                    queue.push_back(g);
                }
            }
        }
        Ok(AdjointModule {
            generator: u.clone(),
            highest_weight: w,
            spaces,
        })
    }
}

impl AdjointModule {
    pub fn generator(&self) -> &EnvElement {
        &self.generator
    }

    pub fn highest_weight(&self) -> &WeightFunctional {
        &self.highest_weight
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(Echelon::dim).sum()
    }

    /// Weights with multiplicities, ordered by their coordinate vectors.
    pub fn weights(&self) -> Vec<(WeightFunctional, usize)> {
        self.spaces
            .iter()
            .map(|(w, e)| (WeightFunctional::from_ints(w), e.dim()))
            .collect()
    }

    fn space_elements(&self, d: &RootDatum, e: &Echelon<Word>) -> Vec<EnvElement> {
        e.rows()
            .map(|r| EnvElement::from_normal_terms(d, r.clone()).expect("PBW rows"))
            .collect()
    }

    pub fn basis(&self, d: &RootDatum) -> Vec<EnvElement> {
        self.spaces.values().flat_map(|e| self.space_elements(d, e)).collect()
    }

    /// Basis of the zero-weight space `R_0`.
    pub fn zero_weight_basis(&self, d: &RootDatum) -> Vec<EnvElement> {
        match self.spaces.get(&vec![0; d.rank()]) {
            Some(e) => self.space_elements(d, e),
            None => Vec::new(),
        }
    }

    pub fn zero_weight_dim(&self, rank: usize) -> usize {
        self.spaces.get(&vec![0; rank]).map_or(0, Echelon::dim)
    }

    pub fn contains(&self, d: &RootDatum, x: &EnvElement) -> bool {
        if x.is_zero() {
            return true;
        }
        let Ok(w) = x.weight(d) else {
            // split into weight components
            let mut parts: BTreeMap<Vec<i64>, BTreeMap<Word, Q>> = BTreeMap::new();
            for (m, c) in x.terms() {
                accumulate(parts.entry(d.word_weight(m)).or_default(), m.clone(), c.clone());
            }
            return parts.iter().all(|(w, p)| {
                self.spaces.get(w).is_some_and(|e| e.contains(p))
            });
        };
        let key: Vec<i64> = w
            .constant_part()
            .iter()
            .map(|c| crate::scalar::to_i64(c).unwrap())
            .collect();
        self.spaces.get(&key).is_some_and(|e| e.contains(x.terms()))
    }

    /// Checks closure under `ad` of every Chevalley basis element.
    pub fn is_closed(&self, d: &RootDatum) -> bool {
        let basis = self.basis(d);
        (0..d.dim()).all(|x| {
            let lx = LieElement::basis(d, x);
            basis
                .iter()
                .all(|b| self.contains(d, &d.adjoint_act(&lx, b).unwrap()))
        })
    }

    /// Spanning set of `P_0`: each `r ∈ R_0` reduced modulo `U(g)n_+` to a
    /// Cartan polynomial, read as its action on a highest-weight vector.
    pub fn zero_weight_polynomials(&self, d: &RootDatum) -> Vec<HPolynomial> {
        let polys: Vec<HPolynomial> = self
            .zero_weight_basis(d)
            .iter()
            .map(|r| cartan_part(d, r))
            .collect();
        reduced_basis(&polys)
    }
}

/// Drops PBW monomials ending in a positive root vector and reads the
/// remaining (pure Cartan) monomials as commutative polynomials.
pub(crate) fn cartan_part(d: &RootDatum, r: &EnvElement) -> HPolynomial {
    let l = d.rank();
    let mut terms = Vec::new();
    for (w, c) in r.terms() {
        if w.last().is_some_and(|&x| d.is_positive(x)) {
            continue;
        }
        // a zero-weight monomial without positive factors has no negative ones
        assert!(w.iter().all(|&x| d.is_cartan(x)), "weight-zero monomial with a lowering factor");
        let mut e = vec![0u32; l];
        for &x in w {
            let crate::rootsystem::BasisLabel::Coroot(i) = d.label(x) else {
                unreachable!()
            };
            e[i - 1] += 1;
        }
        terms.push((e, c.clone()));
    }
    HPolynomial::from_terms(l, terms)
}
