//! Exact rational scalars and the coefficient trait shared by all sparse
//! containers in the crate.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

/// Coefficient ring of sparse vectors: rationals, or polynomials in the level.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + From<Q>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn scale(&self, c: &Q) -> Self {
        self.clone() * Self::from(c.clone())
    }
}

impl Coeff for Q {
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
}

/// `x += c` in a sparse map, dropping the entry when it cancels.
pub fn accumulate<K: Ord, C: Coeff>(map: &mut std::collections::BTreeMap<K, C>, key: K, c: C) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let v = e.get().clone() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_q("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(parse_q("7").unwrap(), q(7));
        assert_eq!(qf(-3, 2).to_string(), "-3/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn accumulate_cancels() {
        let mut m = std::collections::BTreeMap::new();
        accumulate(&mut m, 1, q(2));
        accumulate(&mut m, 1, q(-2));
        assert!(m.is_empty());
    }
}
