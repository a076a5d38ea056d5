use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{LevelCoeff, VacuumModule, VertexState};
use crate::envalg::{EnvElement, Rewrite};
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::scalar::{accumulate, Q};

/// Levels at which a state is singular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelSet {
    All,
    /// finite, sorted; empty means no level
    Finite(Vec<Q>),
}

impl LevelSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, LevelSet::Finite(v) if v.is_empty())
    }

    pub fn contains(&self, k: &Q) -> bool {
        match self {
            LevelSet::All => true,
            LevelSet::Finite(v) => v.contains(k),
        }
    }
}

impl fmt::Display for LevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelSet::All => f.write_str("all k"),
            LevelSet::Finite(v) if v.is_empty() => f.write_str("none"),
            LevelSet::Finite(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", s.join(", "))
            }
        }
    }
}

impl<C: LevelCoeff> VacuumModule<'_, C> {
    /// Residuals `e_{α_i}(0) s` for each simple root and `f_θ(1) s`.
    pub fn singular_conditions(&self, s: &VertexState<C>) -> Result<Vec<(String, VertexState<C>)>> {
        self.owns(s)?;
        let d = self.d;
        if !s.is_zero() && (s.degree().is_none() || s.weight(d).is_err()) {
            return Err(Error::NotHomogeneous);
        }
        let mut out = Vec::new();
        for i in 1..=d.rank() {
            let e = d.simple_root(i);
            out.push((format!("{}(0)", d.label(e)), self.mode_act(e, 0, s)));
        }
        let f = d.lowest_root();
        out.push((format!("{}(1)", d.label(f)), self.mode_act(f, 1, s)));
        Ok(out)
    }
}

impl VacuumModule<'_, UniPoly> {
    /// Common rational roots of every coefficient of every residual.
    pub fn singular_levels(&self, s: &VertexState<UniPoly>) -> Result<LevelSet> {
        let mut g = UniPoly::zero();
        for (_, r) in self.singular_conditions(s)? {
            for c in r.terms().values() {
                g = g.gcd(c);
            }
        }
        if g.is_zero() {
            return Ok(LevelSet::All);
        }
        Ok(LevelSet::Finite(g.rational_roots()?))
    }
}

impl<C: LevelCoeff> VacuumModule<'_, C> {
    /// Zhu projection `x_1(-n_1-1)···x_m(-n_m-1)|0⟩ ↦ (-1)^{Σn} x_m···x_1`.
    /// A numeric `k` is needed only when some coefficient involves it.
    pub fn zhu_f(&self, s: &VertexState<C>, k: Option<&Q>) -> Result<EnvElement> {
        self.owns(s)?;
        let mut words = BTreeMap::new();
        for (w, c) in s.terms() {
            let c = match (c.as_rational(), k) {
                (Some(c), _) => c,
                (None, Some(k)) => c.at_level(k),
                (None, None) => return Err(Error::MissingLevel),
            };
            let shift: u32 = w.iter().map(|m| m.depth - 1).sum();
            let c = if shift % 2 == 1 { -c } else { c };
            let word: Vec<usize> = w.iter().rev().map(|m| m.x).collect();
            accumulate(&mut words, word, c);
        }
        let terms = self.d.normalize_words(words, Rewrite::default());
        EnvElement::from_normal_terms(self.d, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{AlgebraType, RootDatum, RootLabel};
    use crate::scalar::{q, qf};

    #[test]
    fn vacuum_is_singular_everywhere() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        let v = VacuumModule::symbolic(&d);
        for (_, r) in v.singular_conditions(&v.vacuum()).unwrap() {
            assert!(r.is_zero());
        }
        assert_eq!(v.singular_levels(&v.vacuum()).unwrap(), LevelSet::All);
    }

    #[test]
    fn v1_levels() {
        for l in 4..=6 {
            let d = RootDatum::build(AlgebraType::D, l).unwrap();
            let v = VacuumModule::symbolic(&d);
            let s = v.build_vn(1).unwrap();
            let res = v.singular_levels(&s).unwrap();
            assert_eq!(res, LevelSet::Finite(vec![q(2 - l as i64)]));
            // residuals are linear in k
            for (_, r) in v.singular_conditions(&s).unwrap() {
                assert!(r.terms().values().all(|c| c.degree().unwrap_or(0) <= 1));
            }
        }
    }

    #[test]
    fn b_levels() {
        for l in 2..=4 {
            let d = RootDatum::build(AlgebraType::B, l).unwrap();
            let v = VacuumModule::symbolic(&d);
            let s = v.build_b_vector().unwrap();
            assert_eq!(
                v.singular_levels(&s).unwrap(),
                LevelSet::Finite(vec![qf(3 - 2 * l as i64, 2)])
            );
        }
    }

    #[test]
    fn single_mode_is_never_singular() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        let v = VacuumModule::symbolic(&d);
        let s = v.parse_state("E(+1,-2)(-1)|0>").unwrap();
        let conds = v.singular_conditions(&s).unwrap();
        // f_θ(1) kills it (-2ε_2 is not a root); e_{α_2}(0) does not
        assert!(conds.last().unwrap().1.is_zero());
        assert!(!conds[1].1.is_zero());
        assert!(v.singular_levels(&s).unwrap().is_empty());
    }

    #[test]
    fn zhu_images() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        let v = VacuumModule::symbolic(&d);
        assert_eq!(v.zhu_f(&v.vacuum(), None).unwrap(), EnvElement::one(&d));
        let x = d.root(RootLabel::minus(2, 3));
        let s = v.parse_state("E(+2,-3)(-2)|0>").unwrap();
        assert_eq!(v.zhu_f(&s, None).unwrap(), EnvElement::basis(&d, x).scale(&q(-1)));
        let sk = v.parse_state("(k+1) * E(+2,-3)(-1)|0>").unwrap();
        assert!(matches!(v.zhu_f(&sk, None), Err(Error::MissingLevel)));
        assert_eq!(v.zhu_f(&sk, Some(&q(1))).unwrap(), EnvElement::basis(&d, x).scale(&q(2)));
    }
}
