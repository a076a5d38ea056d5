use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A root `±ε_i ± ε_j` (`i < j`) or, for type B, a short root `±ε_i`.
/// Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootLabel {
    Pair { i: u8, pi: bool, j: u8, pj: bool },
    Short { i: u8, positive: bool },
}

/// Coarse shape of a root, ignoring overall sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    PlusMinus,
    PlusPlus,
    MinusMinus,
    Short,
}

impl RootLabel {
    pub fn pair(i: u8, pi: bool, j: u8, pj: bool) -> Self {
        debug_assert!(i < j);
        RootLabel::Pair { i, pi, j, pj }
    }

    /// `ε_i - ε_j`.
    pub fn minus(i: u8, j: u8) -> Self {
        Self::pair(i, true, j, false)
    }

    /// `ε_i + ε_j`.
    pub fn plus(i: u8, j: u8) -> Self {
        Self::pair(i, true, j, true)
    }

    pub fn short(i: u8) -> Self {
        RootLabel::Short { i, positive: true }
    }

    pub fn neg(self) -> Self {
        match self {
            RootLabel::Pair { i, pi, j, pj } => RootLabel::Pair {
                i,
                pi: !pi,
                j,
                pj: !pj,
            },
            RootLabel::Short { i, positive } => RootLabel::Short {
                i,
                positive: !positive,
            },
        }
    }

    pub fn is_positive(self) -> bool {
        match self {
            RootLabel::Pair { pi, .. } => pi,
            RootLabel::Short { positive, .. } => positive,
        }
    }

    pub fn kind(self) -> RootKind {
        match self {
            RootLabel::Pair { pi, pj, .. } if pi == pj => {
                if pi {
                    RootKind::PlusPlus
                } else {
                    RootKind::MinusMinus
                }
            }
            RootLabel::Pair { .. } => RootKind::PlusMinus,
            RootLabel::Short { .. } => RootKind::Short,
        }
    }

    /// Coordinates in the `ε` basis.
    pub fn eps(self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        let s = |b: bool| if b { 1 } else { -1 };
        match self {
            RootLabel::Pair { i, pi, j, pj } => {
                v[i as usize - 1] = s(pi);
                v[j as usize - 1] = s(pj);
            }
            RootLabel::Short { i, positive } => v[i as usize - 1] = s(positive),
        }
        v
    }

    /// Inverse of [`RootLabel::eps`]; `None` if the vector is not of root shape.
    pub fn from_eps(v: &[i64]) -> Option<Self> {
        let nz: Vec<(usize, i64)> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        match nz.as_slice() {
            [(i, a)] if a.abs() == 1 => Some(RootLabel::Short {
                i: *i as u8 + 1,
                positive: *a > 0,
            }),
            [(i, a), (j, b)] if a.abs() == 1 && b.abs() == 1 => Some(RootLabel::Pair {
                i: *i as u8 + 1,
                pi: *a > 0,
                j: *j as u8 + 1,
                pj: *b > 0,
            }),
            _ => None,
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |b: bool| if b { '+' } else { '-' };
        match *self {
            RootLabel::Pair { i, pi, j, pj } => write!(f, "E({}{},{}{})", s(pi), i, s(pj), j),
            RootLabel::Short { i, positive } => write!(f, "E({}{})", s(positive), i),
        }
    }
}

/// A Chevalley basis element: a root vector or a simple coroot `h_i` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    Root(RootLabel),
    Coroot(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Root(r) => r.fmt(f),
            BasisLabel::Coroot(i) => write!(f, "H({i})"),
        }
    }
}

fn parse_signed(s: &str) -> Option<(bool, u8)> {
    let s = s.trim();
    let (sign, rest) = match s.as_bytes().first()? {
        b'+' => (true, &s[1..]),
        b'-' => (false, &s[1..]),
        _ => (true, s),
    };
    let n: u8 = rest.trim().parse().ok()?;
    (n >= 1).then_some((sign, n))
}

impl FromStr for BasisLabel {
    type Err = Error;

    /// Accepts `E(±i,±j)`, `E(±i)`, `H(i)`, and `F(...)` as the negated root.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid basis label `{s}`"));
        let t = s.trim();
        let head = t.chars().next().ok_or_else(bad)?;
        let inner = t[1..]
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        if head == 'H' {
            let i: usize = inner.trim().parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            return Ok(BasisLabel::Coroot(i));
        }
        let negate = match head {
            'E' => false,
            'F' => true,
            _ => return Err(bad()),
        };
        let parts: Vec<&str> = inner.split(',').collect();
        let root = match parts.as_slice() {
            [a] => {
                let (p, i) = parse_signed(a).ok_or_else(bad)?;
                RootLabel::Short { i, positive: p }
            }
            [a, b] => {
                let (pa, a) = parse_signed(a).ok_or_else(bad)?;
                let (pb, b) = parse_signed(b).ok_or_else(bad)?;
                match a.cmp(&b) {
                    std::cmp::Ordering::Less => RootLabel::pair(a, pa, b, pb),
                    std::cmp::Ordering::Greater => RootLabel::pair(b, pb, a, pa),
                    std::cmp::Ordering::Equal => return Err(bad()),
                }
            }
            _ => return Err(bad()),
        };
        Ok(BasisLabel::Root(if negate { root.neg() } else { root }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_text_roundtrip() {
        for s in ["E(+1,-2)", "E(-1,-3)", "E(+2)", "E(-4)", "H(3)"] {
            let l: BasisLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        let f: BasisLabel = "F(+1,+2)".parse().unwrap();
        assert_eq!(f.to_string(), "E(-1,-2)");
        assert!("E(+1,+1)".parse::<BasisLabel>().is_err());
        assert!("X(1)".parse::<BasisLabel>().is_err());
    }

    #[test]
    fn negation_is_involution() {
        let r = RootLabel::minus(1, 3);
        assert_eq!(r.neg().neg(), r);
        assert!(!r.neg().is_positive());
        assert_eq!(RootLabel::from_eps(&r.eps(4)), Some(r));
        assert_eq!(r.neg().kind(), RootKind::PlusMinus);
        assert_eq!(RootLabel::plus(1, 2).neg().kind(), RootKind::MinusMinus);
    }
}
