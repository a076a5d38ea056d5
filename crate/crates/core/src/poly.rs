//! Dense univariate polynomials over the rationals.
//!
//! Used for the symbolic level `k` in vertex-algebra coefficients and for the
//! formal parameter `t` of weight families.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{parse_q, Coeff, Q};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    /// `coeffs[i]` multiplies `x^i`; no trailing zeros.
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    /// `a + b x`.
    pub fn linear(a: Q, b: Q) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &f * c;
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// All distinct rational roots, ascending.
    ///
    /// Returns an error for the zero polynomial.
    pub fn rational_roots(&self) -> Result<Vec<Q>> {
        if self.is_zero() {
            return Err(Error::Invalid("roots of the zero polynomial".into()));
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        // strip x^m
        while p.coeff(0).is_zero() && !p.is_constant() {
            roots.push(Q::zero());
            p = Self::new(p.coeffs[1..].to_vec());
        }
        if p.is_constant() {
            roots.dedup();
            return Ok(roots);
        }
        // integer coefficients
        let den = p
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let num_divs = divisors(&a0)?;
        let den_divs = divisors(&an)?;
        let mut cands: Vec<Q> = Vec::new();
        for n in &num_divs {
            for d in &den_divs {
                let c = Q::new(n.clone(), d.clone());
                cands.push(c.clone());
                cands.push(-c);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            if p.eval(&c).is_zero() {
                roots.push(c);
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    /// Renders with the given variable name.
    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }

    /// Parses the output of [`UniPoly::display_var`] (whitespace tolerated).
    pub fn parse_var(s: &str, var: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid polynomial `{s}`"));
        if s.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && idx > 0 && !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        terms.push((neg, cur));
        let mut acc = UniPoly::zero();
        for (neg, body) in terms {
            let (coef, mono) = match body.split_once('*') {
                Some((c, m)) => (parse_q(c)?, m.to_string()),
                None if body.starts_with(var) => (Q::one(), body.clone()),
                None => (parse_q(&body)?, String::new()),
            };
            let exp = if mono.is_empty() {
                0
            } else if mono == var {
                1
            } else {
                let e = mono
                    .strip_prefix(var)
                    .and_then(|r| r.strip_prefix('^'))
                    .ok_or_else(bad)?;
                e.parse::<usize>().map_err(|_| bad())?
            };
            let mut v = vec![Q::zero(); exp + 1];
            v[exp] = if neg { -coef } else { coef };
            acc = acc + UniPoly::new(v);
        }
        Ok(acc)
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Ok(vec![BigInt::one()]);
    }
    // trial division; coefficients here stay small
    if n > BigInt::from(1_000_000_000_000i64) {
        return Err(Error::Invalid(format!(
            "coefficient {n} too large for rational root search"
        )));
    }
    let n: i64 = i64::try_from(&n).unwrap();
    let mut out = Vec::new();
    let mut d = 1i64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        UniPoly::constant(Q::one())
    }
}

impl From<Q> for UniPoly {
    fn from(c: Q) -> Self {
        UniPoly::constant(c)
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        self + (-rhs)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Coeff for UniPoly {
    fn scale(&self, c: &Q) -> Self {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("k"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn p(v: &[i64]) -> UniPoly {
        UniPoly::new(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn gcd_of_shared_root() {
        // (k+2)(k-1) and (k+2)(k+5)
        let a = p(&[-2, 1, 1]);
        let b = p(&[10, 7, 1]);
        assert_eq!(a.gcd(&b), p(&[2, 1]));
        assert_eq!(a.gcd(&UniPoly::zero()), a.monic());
    }

    #[test]
    fn rational_roots_found() {
        // (2k+3)(k-1) k
        let f = p(&[0, -3, 1, 2]);
        assert_eq!(f.rational_roots().unwrap(), vec![qf(-3, 2), q(0), q(1)]);
        // k^2 + 1 has none
        assert!(p(&[1, 0, 1]).rational_roots().unwrap().is_empty());
        assert!(UniPoly::zero().rational_roots().is_err());
    }

    #[test]
    fn display_parse_roundtrip() {
        let f = UniPoly::new(vec![qf(-1, 2), q(0), q(3), q(-1)]);
        let s = f.display_var("k");
        assert_eq!(s, "-1/2+3*k^2-k^3");
        assert_eq!(UniPoly::parse_var(&s, "k").unwrap(), f);
        assert_eq!(UniPoly::parse_var("k + 2", "k").unwrap(), p(&[2, 1]));
        assert_eq!(UniPoly::parse_var("-t", "t").unwrap(), p(&[0, -1]));
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, 0, -2, 5, 1]);
        let b = p(&[1, 2]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq * b + r, a);
    }
}
