//! Weights in `h*`, stored as their values on the simple coroots (that is, in
//! the fundamental-weight basis), each affine-linear in a formal parameter `t`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::UniPoly;
use crate::scalar::{is_nonneg_integer, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightFunctional {
    /// `(c_i, d_i)`: the value on `h_i` is `c_i + d_i t`.
    coords: Vec<(Q, Q)>,
}

impl WeightFunctional {
    pub fn zero(rank: usize) -> Self {
        Self::constant(vec![Q::zero(); rank])
    }

    pub fn constant(c: Vec<Q>) -> Self {
        WeightFunctional {
            coords: c.into_iter().map(|x| (x, Q::zero())).collect(),
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::constant(c.iter().map(|&x| q(x)).collect())
    }

    /// `c + t d`.
    pub fn affine(c: Vec<Q>, d: Vec<Q>) -> Self {
        assert_eq!(c.len(), d.len());
        WeightFunctional {
            coords: c.into_iter().zip(d).collect(),
        }
    }

    /// `t ω_i` (1-based).
    pub fn t_fundamental(rank: usize, i: usize) -> Self {
        let mut d = vec![Q::zero(); rank];
        d[i - 1] = Q::one();
        Self::affine(vec![Q::zero(); rank], d)
    }

    /// `c ω_i` (1-based).
    pub fn fundamental(rank: usize, i: usize, c: i64) -> Self {
        let mut v = vec![Q::zero(); rank];
        v[i - 1] = q(c);
        Self::constant(v)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn constant_part(&self) -> Vec<Q> {
        self.coords.iter().map(|(c, _)| c.clone()).collect()
    }

    pub fn t_part(&self) -> Vec<Q> {
        self.coords.iter().map(|(_, d)| d.clone()).collect()
    }

    pub fn is_parametric(&self) -> bool {
        self.coords.iter().any(|(_, d)| !d.is_zero())
    }

    /// Value on `h_i` (0-based) as a polynomial in `t`.
    pub fn coord(&self, i: usize) -> UniPoly {
        let (c, d) = &self.coords[i];
        UniPoly::linear(c.clone(), d.clone())
    }

    pub fn at(&self, t: &Q) -> Vec<Q> {
        self.coords.iter().map(|(c, d)| c + d * t).collect()
    }

    pub fn specialize(&self, t: &Q) -> Self {
        Self::constant(self.at(t))
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightFunctional {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|((a, b), (c, d))| (a + c, b + d))
                .collect(),
        }
    }

    /// Whether a constant weight is dominant integral.
    pub fn is_dominant_integral(&self) -> bool {
        !self.is_parametric() && self.coords.iter().all(|(c, _)| is_nonneg_integer(c))
    }

    /// Coordinate strings such as `-2-t`.
    pub fn coord_strings(&self) -> Vec<String> {
        (0..self.rank())
            .map(|i| {
                let (c, d) = &self.coords[i];
                // constant first, then t
                let p = UniPoly::linear(c.clone(), d.clone());
                p.display_var("t")
            })
            .collect()
    }
}

fn omega_coefficient(c: &Q, d: &Q) -> Option<String> {
    if c.is_zero() && d.is_zero() {
        return None;
    }
    let p = UniPoly::linear(c.clone(), d.clone());
    let s = p.display_var("t");
    Some(if d.is_zero() {
        if c.is_one() {
            String::new()
        } else if (-c).is_one() {
            "-".into()
        } else {
            s
        }
    } else if c.is_zero() && (d.is_one() || (-d).is_one() || !d.is_integer()) {
        s
    } else if c.is_zero() {
        s.replace('*', "")
    } else {
        format!("({})", s.replace('*', ""))
    })
}

impl fmt::Display for WeightFunctional {
    /// `ω` notation, e.g. `(-2-t)ω_1 + tω_3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, (c, d)) in self.coords.iter().enumerate() {
            if let Some(co) = omega_coefficient(c, d) {
                parts.push(format!("{co}ω_{}", i + 1));
            }
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        f.write_str(&out)
    }
}

/// Serialized form: coordinates on `h_1..h_ℓ` as strings affine in `t`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WeightRecord {
    pub coords: Vec<String>,
    pub display: String,
}

impl From<&WeightFunctional> for WeightRecord {
    fn from(w: &WeightFunctional) -> Self {
        WeightRecord {
            coords: w.coord_strings(),
            display: w.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_notation() {
        let w = WeightFunctional::affine(
            vec![q(-2), q(0), q(0), q(0)],
            vec![q(-1), q(0), q(1), q(0)],
        );
        assert_eq!(w.to_string(), "(-2-t)ω_1 + tω_3");
        let w = WeightFunctional::affine(
            vec![q(0), q(-1), q(0), q(0)],
            vec![q(1), q(-1), q(1), q(0)],
        );
        assert_eq!(w.to_string(), "tω_1 + (-1-t)ω_2 + tω_3");
        assert_eq!(WeightFunctional::fundamental(4, 2, -1).to_string(), "-ω_2");
        assert_eq!(WeightFunctional::fundamental(4, 1, -2).to_string(), "-2ω_1");
        assert_eq!(WeightFunctional::zero(4).to_string(), "0");
        assert_eq!(WeightFunctional::from_ints(&[2, 0, -1, 0]).to_string(), "2ω_1 - ω_3");
    }

    #[test]
    fn coordinates_as_strings() {
        let w = WeightFunctional::affine(vec![q(-2), q(0)], vec![q(-1), q(1)]);
        assert_eq!(w.coord_strings(), vec!["-2-t", "t"]);
        assert_eq!(w.at(&q(3)), vec![q(-5), q(3)]);
        assert!(!w.is_dominant_integral());
        assert!(WeightFunctional::from_ints(&[0, 2]).is_dominant_integral());
    }
}
