//! Which members of a family are dominant integral.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{canonical_family, ClassificationResult};
use crate::scalar::{is_nonneg_integer, Q};
use crate::weight::WeightFunctional;

/// Parameter values giving dominant integral weights. For lines, `t` is
/// the canonical parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinaryConstraint {
    /// no member qualifies
    Empty,
    /// a dominant integral point
    Unconstrained,
    /// `t ≥ lo`, `t mod modulus` in `residues`
    Unbounded {
        lo: BigInt,
        modulus: BigInt,
        residues: Vec<BigInt>,
    },
    /// explicit list of admissible `t`
    Finite(Vec<BigInt>),
}

impl OrdinaryConstraint {
    pub fn is_empty(&self) -> bool {
        matches!(self, OrdinaryConstraint::Empty)
    }
}

impl fmt::Display for OrdinaryConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinaryConstraint::Empty => f.write_str("empty"),
            OrdinaryConstraint::Unconstrained => f.write_str("none"),
            OrdinaryConstraint::Unbounded { lo, modulus, residues } => {
                write!(f, "t in Z>={lo}")?;
                if !modulus.is_one() {
                    let r: Vec<String> = residues.iter().map(|x| x.to_string()).collect();
                    write!(f, ", t mod {modulus} in {{{}}}", r.join(", "))?;
                }
                Ok(())
            }
            OrdinaryConstraint::Finite(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "t in {{{}}}", s.join(", "))
            }
        }
    }
}

fn ceil(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

fn floor(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// The admissible parameter values of `w` (taken in canonical form).
pub fn ordinary_constraint(w: &WeightFunctional) -> OrdinaryConstraint {
    if !w.is_parametric() {
        return if w.is_dominant_integral() {
            OrdinaryConstraint::Unconstrained
        } else {
            OrdinaryConstraint::Empty
        };
    }
    let w = canonical_family(w);
    let (c, d) = (w.constant_part(), w.t_part());
    // the canonical coordinate equals t, so t ranges over integers >= 0
    let mut lo = BigInt::zero();
    let mut hi: Option<BigInt> = None;
    let mut modulus = BigInt::one();
    for (ci, di) in c.iter().zip(&d) {
        if di.is_zero() {
            if !is_nonneg_integer(ci) {
                return OrdinaryConstraint::Empty;
            }
            continue;
        }
        modulus = modulus.lcm(di.denom());
        let bound = -ci / di;
        if di.is_positive() {
            lo = lo.max(ceil(&bound));
        } else {
            let b = floor(&bound);
            hi = Some(match hi {
                Some(h) => h.min(b),
                None => b,
            });
        }
    }
    let integral = |t: &BigInt| {
        let t = Q::from_integer(t.clone());
        c.iter().zip(&d).all(|(ci, di)| (ci + di * &t).is_integer())
    };
    match hi {
        Some(hi) => {
            let mut v = Vec::new();
            let mut t = lo;
            while t <= hi {
                if integral(&t) {
                    v.push(t.clone());
                }
                t += 1;
            }
            if v.is_empty() {
                OrdinaryConstraint::Empty
            } else {
                OrdinaryConstraint::Finite(v)
            }
        }
        None => {
            let mut residues = Vec::new();
            let mut r = BigInt::zero();
            while r < modulus {
                if integral(&r) {
                    residues.push(r.clone());
                }
                r += 1;
            }
            if residues.is_empty() {
                return OrdinaryConstraint::Empty;
            }
            OrdinaryConstraint::Unbounded { lo, modulus, residues }
        }
    }
}

/// A family together with its nonempty dominant-integral constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryFamily {
    pub family: WeightFunctional,
    pub constraint: OrdinaryConstraint,
}

/// Families containing at least one dominant integral weight.
pub fn filter_ordinary(r: &ClassificationResult) -> Vec<OrdinaryFamily> {
    r.families
        .iter()
        .filter_map(|w| {
            let constraint = ordinary_constraint(w);
            (!constraint.is_empty()).then(|| OrdinaryFamily {
                family: w.clone(),
                constraint,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn wf(c: &[Q], d: &[Q]) -> WeightFunctional {
        WeightFunctional::affine(c.to_vec(), d.to_vec())
    }

    #[test]
    fn constraints() {
        let z = q(0);
        let one = q(1);
        assert_eq!(ordinary_constraint(&wf(&[z.clone(), z.clone()], &[z.clone(), one.clone()])).to_string(), "t in Z>=0");
        // (-2-t, t): never
        assert!(ordinary_constraint(&wf(&[q(-2), z.clone()], &[q(-1), one.clone()])).is_empty());
        // (3-t, t): t in {0,1,2,3}
        assert_eq!(
            ordinary_constraint(&wf(&[q(3), z.clone()], &[q(-1), one.clone()])).to_string(),
            "t in {0, 1, 2, 3}"
        );
        // (t/2, t): even t
        assert_eq!(
            ordinary_constraint(&wf(&[z.clone(), z.clone()], &[qf(1, 2), one.clone()])).to_string(),
            "t in Z>=0, t mod 2 in {0}"
        );
        // (t - 3, t): t >= 3
        assert_eq!(
            ordinary_constraint(&wf(&[q(-3), z.clone()], &[one.clone(), one.clone()])).to_string(),
            "t in Z>=3"
        );
        // (1/2, t): never
        assert!(ordinary_constraint(&wf(&[qf(1, 2), z.clone()], &[z.clone(), one])).is_empty());
        assert_eq!(ordinary_constraint(&WeightFunctional::from_ints(&[0, 2])), OrdinaryConstraint::Unconstrained);
        assert!(ordinary_constraint(&WeightFunctional::from_ints(&[0, -2])).is_empty());
    }
}
