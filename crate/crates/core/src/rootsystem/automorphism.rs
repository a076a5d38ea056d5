use super::{LieElement, RootDatum};
use crate::error::{Error, Result};
use crate::scalar::{accumulate, q};
use crate::weight::WeightFunctional;

/// Lie algebra automorphism induced by a Dynkin-diagram symmetry:
/// `x_a ↦ c_a x_{σ(a)}` with `c_a = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    /// images of the simple roots, 1-based
    simple_perm: Vec<usize>,
    /// per basis index: (image index, scalar)
    map: Vec<(usize, i64)>,
}

impl DiagramAutomorphism {
    /// Extends `e_i ↦ e_{σ(i)}`, `f_i ↦ f_{σ(i)}` through the bracket.
    pub fn from_simple_permutation(d: &RootDatum, perm: &[usize]) -> Result<Self> {
        let l = d.rank();
        let undefined = || {
            Error::AutomorphismUndefined(format!("{} with simple-root permutation {perm:?}", d.key()))
        };
        let mut seen = vec![false; l];
        if perm.len() != l {
            return Err(undefined());
        }
        for &p in perm {
            if p == 0 || p > l || seen[p - 1] {
                return Err(undefined());
            }
            seen[p - 1] = true;
        }
        let a = d.cartan_matrix();
        for i in 0..l {
            for j in 0..l {
                if a[perm[i] - 1][perm[j] - 1] != a[i][j] {
                    return Err(undefined());
                }
            }
        }
        let n = d.dim();
        let mut map: Vec<Option<(usize, i64)>> = vec![None; n];
        for i in 1..=l {
            map[d.simple_root(i)] = Some((d.simple_root(perm[i - 1]), 1));
            map[d.simple_neg_root(i)] = Some((d.simple_neg_root(perm[i - 1]), 1));
            map[d.coroot(i)] = Some((d.coroot(perm[i - 1]), 1));
        }
        // positives by ascending height, negatives by descending height
        let mut order: Vec<usize> = (0..n).filter(|&x| !d.is_cartan(x)).collect();
        order.sort_by_key(|&x| d.height(x).abs());
        for x in order {
            if map[x].is_some() {
                continue;
            }
            let sign = if d.is_positive(x) { 1 } else { -1 };
            // x = [s, y] / N for a simple (co)root vector s of the same sign
            let (s, y, nc) = (1..=l)
                .find_map(|i| {
                    let s = if sign > 0 { d.simple_root(i) } else { d.simple_neg_root(i) };
                    let w: Vec<i64> = d.weight(x).iter().zip(d.weight(s)).map(|(a, b)| a - b).collect();
                    let y = d.root_with_weight(&w)?;
                    match d.bracket_basis(s, y) {
                        [(t, c)] if *t == x => Some((s, y, *c)),
                        _ => None,
                    }
                })
                .expect("root not reachable from a lower one");
            let (si, sc) = map[s].unwrap();
            let (yi, yc) = map[y].expect("lower root not yet mapped");
            let [(t, c)] = d.bracket_basis(si, yi) else {
                return Err(undefined());
            };
            let num = sc * yc * c;
            if num % nc != 0 || (num / nc).abs() != 1 {
                return Err(undefined());
            }
            map[x] = Some((*t, num / nc));
        }
        Ok(DiagramAutomorphism {
            simple_perm: perm.to_vec(),
            map: map.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// The order-three symmetry of D_4:
    /// `α_1 ↦ α_3`, `α_2 ↦ α_2`, `α_3 ↦ α_4`, `α_4 ↦ α_1`.
    pub fn triality(d: &RootDatum) -> Result<Self> {
        if d.kind() != super::AlgebraType::D || d.rank() != 4 {
            return Err(Error::AutomorphismUndefined(format!("triality on {}", d.key())));
        }
        Self::from_simple_permutation(d, &[3, 2, 4, 1])
    }

    pub fn simple_permutation(&self) -> &[usize] {
        &self.simple_perm
    }

    /// Image of a basis element as (index, ±1).
    pub fn image(&self, i: usize) -> (usize, i64) {
        self.map[i]
    }

    pub fn apply(&self, d: &RootDatum, x: &LieElement) -> Result<LieElement> {
        if x.key() != d.key() || self.map.len() != d.dim() {
            return Err(Error::AutomorphismUndefined(d.key().to_string()));
        }
        let mut terms = std::collections::BTreeMap::new();
        for (i, c) in x.terms() {
            let (j, s) = self.map[*i];
            accumulate(&mut terms, j, c * q(s));
        }
        Ok(LieElement::from_terms(d, terms))
    }

    /// Transported weight `λ ∘ σ⁻¹`.
    pub fn apply_weight(&self, w: &WeightFunctional) -> WeightFunctional {
        let c = w.constant_part();
        let t = w.t_part();
        let mut nc = c.clone();
        let mut nt = t.clone();
        for (i, &p) in self.simple_perm.iter().enumerate() {
            nc[p - 1] = c[i].clone();
            nt[p - 1] = t[i].clone();
        }
        WeightFunctional::affine(nc, nt)
    }

    pub fn compose(&self, other: &Self) -> Self {
        // self ∘ other
        let map = other
            .map
            .iter()
            .map(|&(j, s)| {
                let (k, t) = self.map[j];
                (k, s * t)
            })
            .collect();
        let simple_perm = other.simple_perm.iter().map(|&p| self.simple_perm[p - 1]).collect();
        DiagramAutomorphism { simple_perm, map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &(j, s))| i == j && s == 1)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut n = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            n += 1;
        }
        n
    }

    /// Checks `σ([x,y]) = [σx, σy]` on all basis pairs.
    pub fn preserves_brackets(&self, d: &RootDatum) -> bool {
        let n = d.dim();
        for a in 0..n {
            for b in 0..n {
                let xa = LieElement::basis(d, a);
                let xb = LieElement::basis(d, b);
                let lhs = self.apply(d, &d.bracket(&xa, &xb).unwrap()).unwrap();
                let rhs = d
                    .bracket(&self.apply(d, &xa).unwrap(), &self.apply(d, &xb).unwrap())
                    .unwrap();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{AlgebraType, BasisLabel, RootLabel};

    #[test]
    fn triality_is_an_order_three_automorphism() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        let th = DiagramAutomorphism::triality(&d).unwrap();
        assert!(th.preserves_brackets(&d));
        assert_eq!(th.order(), 3);
        let (img, _) = th.image(d.root(RootLabel::minus(1, 2)));
        assert_eq!(d.label(img), BasisLabel::Root(RootLabel::minus(3, 4)));
        let (img, _) = th.image(d.root(RootLabel::plus(3, 4)));
        assert_eq!(d.label(img), BasisLabel::Root(RootLabel::minus(1, 2)));
        let (img, s) = th.image(d.coroot(1));
        assert_eq!((img, s), (d.coroot(3), 1));
    }

    #[test]
    fn weight_transport() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        let th = DiagramAutomorphism::triality(&d).unwrap();
        let w1 = WeightFunctional::fundamental(4, 1, 2);
        assert_eq!(th.apply_weight(&w1), WeightFunctional::fundamental(4, 3, 2));
        assert_eq!(
            th.apply_weight(&th.apply_weight(&w1)),
            WeightFunctional::fundamental(4, 4, 2)
        );
    }

    #[test]
    fn order_two_symmetry_of_d5() {
        let d = RootDatum::build(AlgebraType::D, 5).unwrap();
        let s = DiagramAutomorphism::from_simple_permutation(&d, &[1, 2, 3, 5, 4]).unwrap();
        assert!(s.preserves_brackets(&d));
        assert_eq!(s.order(), 2);
    }

    #[test]
    fn undefined_automorphisms_rejected() {
        let b = RootDatum::build(AlgebraType::B, 3).unwrap();
        assert!(DiagramAutomorphism::triality(&b).is_err());
        assert!(DiagramAutomorphism::from_simple_permutation(&b, &[1, 3, 2]).is_err());
        let d = RootDatum::build(AlgebraType::D, 5).unwrap();
        assert!(DiagramAutomorphism::triality(&d).is_err());
    }
}
