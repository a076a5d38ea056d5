//! The universal affine vertex algebra `N(k,0)`: PBW states over the
//! negative modes, mode actions at a symbolic or numeric level, singular
//! vectors, the Zhu projection and singular-vector search in quotients.

mod graded;
mod singular;

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rootsystem::{DatumKey, DiagramAutomorphism, RootDatum, RootLabel};
use crate::scalar::{accumulate, parse_q, q, Coeff, Q};
use crate::text;
use crate::weight::WeightFunctional;

pub use graded::{graded_component, GradedComponent, IdealData, SingularCell, SingularCellRecord};
pub use singular::LevelSet;

/// A creation mode `x(-n)`, `n ≥ 1`. Normal order: deeper modes first, then
/// basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    pub depth: u32,
    pub x: usize,
}

impl Ord for Mode {
    fn cmp(&self, other: &Self) -> Ordering {
        other.depth.cmp(&self.depth).then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A normal-ordered product of creation modes applied to the vacuum.
pub type ModeWord = Vec<Mode>;

/// Coefficient rings usable for states: polynomials in the level `k`, or
/// rationals once `k` is fixed.
pub trait LevelCoeff: Coeff {
    /// Value at a numeric level.
    fn at_level(&self, k: &Q) -> Q;
    /// The coefficient as a rational if it does not involve `k`.
    fn as_rational(&self) -> Option<Q>;
    fn render(&self) -> String;
    fn parse_coeff(s: &str) -> Result<Self>;
}

impl LevelCoeff for Q {
    fn at_level(&self, _k: &Q) -> Q {
        self.clone()
    }
    fn as_rational(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn parse_coeff(s: &str) -> Result<Self> {
        parse_q(s)
    }
}

impl LevelCoeff for UniPoly {
    fn at_level(&self, k: &Q) -> Q {
        self.eval(k)
    }
    fn as_rational(&self) -> Option<Q> {
        self.is_constant().then(|| self.coeff(0))
    }
    fn render(&self) -> String {
        match self.as_rational() {
            Some(c) => c.to_string(),
            None => format!("({})", self.display_var("k")),
        }
    }
    fn parse_coeff(s: &str) -> Result<Self> {
        UniPoly::parse_var(s, "k")
    }
}

/// Exact sparse element of `N(k,0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexState<C> {
    key: DatumKey,
    terms: BTreeMap<ModeWord, C>,
}

impl<C: LevelCoeff> VertexState<C> {
    pub fn zero(d: &RootDatum) -> Self {
        VertexState {
            key: d.key(),
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum(d: &RootDatum) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), C::one());
        VertexState { key: d.key(), terms }
    }

    pub fn key(&self) -> DatumKey {
        self.key
    }

    pub fn terms(&self) -> &BTreeMap<ModeWord, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.key, other.key, "states over different root data");
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut terms, w.clone(), c.clone());
        }
        VertexState { key: self.key, terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut terms = BTreeMap::new();
        for (w, x) in &self.terms {
            accumulate(&mut terms, w.clone(), x.clone() * c.clone());
        }
        VertexState { key: self.key, terms }
    }

    /// Conformal degree if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|w| word_degree(w));
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    /// `h`-weight if homogeneous.
    pub fn weight(&self, d: &RootDatum) -> Result<WeightFunctional> {
        let mut it = self.terms.keys().map(|w| word_weight(d, w));
        let first = it.next().ok_or(Error::NotHomogeneous)?;
        if it.any(|x| x != first) {
            return Err(Error::NotHomogeneous);
        }
        Ok(WeightFunctional::from_ints(&first))
    }

    /// Numeric specialization `k ↦ value`.
    pub fn at_level(&self, k: &Q) -> VertexState<Q> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            accumulate(&mut terms, w.clone(), c.at_level(k));
        }
        VertexState { key: self.key, terms }
    }

    /// The state with rational coefficients, if none involves `k`.
    pub fn as_rational(&self) -> Option<VertexState<Q>> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            terms.insert(w.clone(), c.as_rational()?);
        }
        Some(VertexState { key: self.key, terms })
    }

    /// Text form, e.g. `(k+2) * E(+1,-2)(-1) E(+1,+2)(-1) |0>`.
    pub fn display(&self, d: &RootDatum) -> String {
        let parts = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut f: Vec<String> = w
                    .iter()
                    .map(|m| format!("{}(-{})", d.label(m.x), m.depth))
                    .collect();
                f.push("|0>".into());
                let f = f.join(" ");
                let r = c.render();
                if c.is_one() {
                    f
                } else if (-c.clone()).is_one() {
                    format!("-{f}")
                } else {
                    format!("{r} * {f}")
                }
            })
            .collect();
        text::join_terms(parts)
    }
}

impl VertexState<Q> {
    pub fn to_symbolic(&self) -> VertexState<UniPoly> {
        VertexState {
            key: self.key,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), UniPoly::constant(c.clone())))
                .collect(),
        }
    }
}

pub fn word_degree(w: &[Mode]) -> u32 {
    w.iter().map(|m| m.depth).sum()
}

pub fn word_weight(d: &RootDatum, w: &[Mode]) -> Vec<i64> {
    let mut out = vec![0; d.rank()];
    for m in w {
        for (o, v) in out.iter_mut().zip(d.weight(m.x)) {
            *o += v;
        }
    }
    out
}

type Sparse<C> = BTreeMap<ModeWord, C>;

/// The vacuum module at a fixed level value (a formal `k` or a rational),
/// with memoized mode actions on PBW monomials.
pub struct VacuumModule<'d, C: LevelCoeff> {
    d: &'d RootDatum,
    level: C,
    create_cache: RefCell<HashMap<(Mode, ModeWord), Rc<Sparse<Q>>>>,
    annihilate_cache: RefCell<HashMap<(usize, u32, ModeWord), Rc<Sparse<C>>>>,
}

impl<'d> VacuumModule<'d, UniPoly> {
    /// Level given by the formal variable `k`.
    pub fn symbolic(d: &'d RootDatum) -> Self {
        Self::new(d, UniPoly::var())
    }
}

impl<'d> VacuumModule<'d, Q> {
    pub fn numeric(d: &'d RootDatum, k: Q) -> Self {
        Self::new(d, k)
    }
}

impl<'d, C: LevelCoeff> VacuumModule<'d, C> {
    pub fn new(d: &'d RootDatum, level: C) -> Self {
        VacuumModule {
            d,
            level,
            create_cache: RefCell::new(HashMap::new()),
            annihilate_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn datum(&self) -> &'d RootDatum {
        self.d
    }

    pub fn level(&self) -> &C {
        &self.level
    }

    pub fn vacuum(&self) -> VertexState<C> {
        VertexState::vacuum(self.d)
    }

    fn owns(&self, s: &VertexState<C>) -> Result<()> {
        if s.key != self.d.key() {
            return Err(Error::DatumMismatch(self.d.key().to_string(), s.key.to_string()));
        }
        Ok(())
    }

    /// `m · w` for a normal-ordered `w`, normal-ordered again. Creation
    /// modes commute up to `[x,y](-n-n')`, so coefficients stay rational.
    fn create_word(&self, m: Mode, w: &[Mode]) -> Rc<Sparse<Q>> {
        if w.first().is_none_or(|y| m <= *y) {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(m);
            v.extend_from_slice(w);
            let mut out = BTreeMap::new();
            out.insert(v, Q::one());
            return Rc::new(out);
        }
        let key = (m, w.to_vec());
        if let Some(r) = self.create_cache.borrow().get(&key) {
            return r.clone();
        }
        let y = w[0];
        let rest = &w[1..];
        let mut out = BTreeMap::new();
        for (u, c) in self.create_word(m, rest).iter() {
            for (v, c2) in self.create_word(y, u).iter() {
                accumulate(&mut out, v.clone(), c * c2);
            }
        }
        for (t, n) in self.d.bracket_basis(m.x, y.x) {
            let deeper = Mode {
                depth: m.depth + y.depth,
                x: *t,
            };
            for (u, c) in self.create_word(deeper, rest).iter() {
                accumulate(&mut out, u.clone(), c * q(*n));
            }
        }
        let r = Rc::new(out);
        self.create_cache.borrow_mut().insert(key, r.clone());
        r
    }

    /// `x(m) w` with `m ≥ 0`.
    fn annihilate_word(&self, x: usize, m: u32, w: &[Mode]) -> Rc<Sparse<C>> {
        let Some(&y) = w.first() else {
            return Rc::new(BTreeMap::new());
        };
        let key = (x, m, w.to_vec());
        if let Some(r) = self.annihilate_cache.borrow().get(&key) {
            return r.clone();
        }
        let rest = &w[1..];
        let mut out: Sparse<C> = BTreeMap::new();
        // y(-n) x(m) rest
        for (u, c) in self.annihilate_word(x, m, rest).iter() {
            for (v, c2) in self.create_word(y, u).iter() {
                accumulate(&mut out, v.clone(), c.scale(c2));
            }
        }
        // [x,y](m-n) rest
        for (t, n) in self.d.bracket_basis(x, y.x) {
            if m >= y.depth {
                for (u, c) in self.annihilate_word(*t, m - y.depth, rest).iter() {
                    accumulate(&mut out, u.clone(), c.scale(&q(*n)));
                }
            } else {
                let deeper = Mode {
                    depth: y.depth - m,
                    x: *t,
                };
                for (u, c) in self.create_word(deeper, rest).iter() {
                    accumulate(&mut out, u.clone(), C::from(c * q(*n)));
                }
            }
        }
        // central term m (x,y) k
        if m == y.depth {
            let f = self.d.form(x, y.x);
            if !f.is_zero() {
                accumulate(&mut out, rest.to_vec(), self.level.scale(&(f * q(m as i64))));
            }
        }
        let r = Rc::new(out);
        self.annihilate_cache.borrow_mut().insert(key, r.clone());
        r
    }

    /// `x(n) s` for any integer mode index.
    pub fn mode_act(&self, x: usize, n: i64, s: &VertexState<C>) -> VertexState<C> {
        assert!(x < self.d.dim());
        let mut terms = BTreeMap::new();
        for (w, c) in &s.terms {
            if n < 0 {
                let m = Mode {
                    depth: (-n) as u32,
                    x,
                };
                for (u, c2) in self.create_word(m, w).iter() {
                    accumulate(&mut terms, u.clone(), c.scale(c2));
                }
            } else {
                for (u, c2) in self.annihilate_word(x, n as u32, w).iter() {
                    accumulate(&mut terms, u.clone(), c.clone() * c2.clone());
                }
            }
        }
        VertexState { key: s.key, terms }
    }

    /// Applies `x_1(n_1) ··· x_r(n_r)` (rightmost first) to `s`.
    pub fn apply_modes(&self, modes: &[(usize, i64)], s: &VertexState<C>) -> VertexState<C> {
        modes
            .iter()
            .rev()
            .fold(s.clone(), |acc, &(x, n)| self.mode_act(x, n, &acc))
    }

    /// `v_n = (Σ_{i≥2} e_{ε1-εi}(-1) e_{ε1+εi}(-1))^n |0⟩` (type D).
    pub fn build_vn(&self, n: u32) -> Result<VertexState<C>> {
        if self.d.kind() != crate::rootsystem::AlgebraType::D {
            return Err(Error::Invalid(format!("v_n is defined for type D, not {}", self.d.key())));
        }
        if n == 0 {
            return Err(Error::Invalid("v_n needs n >= 1".into()));
        }
        let pairs = self.cross_pairs();
        let mut s = self.vacuum();
        for _ in 0..n {
            let mut next = VertexState::zero(self.d);
            for &(a, b) in &pairs {
                next = next.add(&self.apply_modes(&[(a, -1), (b, -1)], &s));
            }
            s = next;
        }
        Ok(s)
    }

    /// `-1/4 e_{ε1}(-1)^2 |0⟩ + Σ_{i≥2} e_{ε1-εi}(-1) e_{ε1+εi}(-1) |0⟩` (type B).
    pub fn build_b_vector(&self) -> Result<VertexState<C>> {
        if self.d.kind() != crate::rootsystem::AlgebraType::B {
            return Err(Error::Invalid(format!(
                "the short-root vector is defined for type B, not {}",
                self.d.key()
            )));
        }
        let e1 = self.d.root(RootLabel::short(1));
        let vac = self.vacuum();
        let mut s = self
            .apply_modes(&[(e1, -1), (e1, -1)], &vac)
            .scale(&C::from(Q::new((-1).into(), 4.into())));
        for (a, b) in self.cross_pairs() {
            s = s.add(&self.apply_modes(&[(a, -1), (b, -1)], &vac));
        }
        Ok(s)
    }

    fn cross_pairs(&self) -> Vec<(usize, usize)> {
        (2..=self.d.rank() as u8)
            .map(|i| {
                (
                    self.d.root(RootLabel::minus(1, i)),
                    self.d.root(RootLabel::plus(1, i)),
                )
            })
            .collect()
    }

    /// Mode-wise image under a diagram automorphism.
    pub fn apply_automorphism(&self, a: &DiagramAutomorphism, s: &VertexState<C>) -> Result<VertexState<C>> {
        self.owns(s)?;
        let mut out = VertexState::zero(self.d);
        for (w, c) in &s.terms {
            let mut sign = 1i64;
            let modes: Vec<(usize, i64)> = w
                .iter()
                .map(|m| {
                    let (y, e) = a.image(m.x);
                    sign *= e;
                    (y, -(m.depth as i64))
                })
                .collect();
            let img = self.apply_modes(&modes, &self.vacuum());
            out = out.add(&img.scale(&c.scale(&q(sign))));
        }
        Ok(out)
    }

    /// Parses `coeff * X(n) Y(m) ... |0> + ...`. Modes are applied right to
    /// left, so any mode index is allowed and the result is normal-ordered.
    pub fn parse_state(&self, s: &str) -> Result<VertexState<C>> {
        let mut out = VertexState::zero(self.d);
        for t in text::parse_terms(s)? {
            let mut c = match &t.coeff {
                Some(c) => C::parse_coeff(c)?,
                None => C::one(),
            };
            if t.negative {
                c = -c;
            }
            let mut modes = Vec::new();
            for (head, suffix) in &t.factors {
                let [n] = suffix.as_slice() else {
                    return Err(Error::Parse(format!("`{head}` needs exactly one mode index in `{s}`")));
                };
                let n: i64 = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad mode index `{n}` in `{s}`")))?;
                modes.push((self.d.parse_label(head)?, n));
            }
            let v = self.apply_modes(&modes, &self.vacuum());
            out = out.add(&v.scale(&c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::AlgebraType;

    fn d4() -> RootDatum {
        RootDatum::build(AlgebraType::D, 4).unwrap()
    }

    #[test]
    fn vacuum_is_annihilated() {
        let d = d4();
        let v = VacuumModule::symbolic(&d);
        let e = d.root(RootLabel::minus(1, 2));
        assert!(v.mode_act(e, 0, &v.vacuum()).is_zero());
        assert!(v.mode_act(e, 3, &v.vacuum()).is_zero());
    }

    #[test]
    fn pure_central_term() {
        // f_θ(1) e_θ(-1)|0⟩ = -h_θ(0)|0⟩ + (f_θ, e_θ) k |0⟩ = k |0⟩
        let d = d4();
        let v = VacuumModule::symbolic(&d);
        let s = v.apply_modes(&[(d.lowest_root(), 1), (d.highest_root(), -1)], &v.vacuum());
        assert_eq!(s, v.vacuum().scale(&UniPoly::var()));
    }

    #[test]
    fn cartan_zero_mode_reads_weight() {
        let d = d4();
        let v = VacuumModule::symbolic(&d);
        let s = v.parse_state("E(+1,-2)(-1) E(+1,+2)(-2) |0>").unwrap();
        let w = s.weight(&d).unwrap();
        for i in 1..=4 {
            let c = UniPoly::constant(w.constant_part()[i - 1].clone());
            assert_eq!(v.mode_act(d.coroot(i), 0, &s), s.scale(&c));
        }
        assert_eq!(s.degree(), Some(3));
    }

    #[test]
    fn vn_shapes() {
        let d = d4();
        let v = VacuumModule::symbolic(&d);
        let v1 = v.build_vn(1).unwrap();
        assert_eq!(v1.terms().len(), 3);
        assert_eq!(v1.degree(), Some(2));
        assert_eq!(v1.weight(&d).unwrap(), WeightFunctional::fundamental(4, 1, 2));
        let v2 = v.build_vn(2).unwrap();
        assert_eq!(v2.terms().len(), 6);
        let mut cs: Vec<Q> = v2.terms().values().map(|c| c.coeff(0)).collect();
        cs.sort();
        cs.dedup();
        assert_eq!(cs, vec![q(1), q(2)]);
        assert_eq!(v2.weight(&d).unwrap(), WeightFunctional::fundamental(4, 1, 4));
    }

    #[test]
    fn b_vector_shape() {
        let b = RootDatum::build(AlgebraType::B, 2).unwrap();
        let v = VacuumModule::symbolic(&b);
        let s = v.build_b_vector().unwrap();
        assert_eq!(s.terms().len(), 2);
        assert_eq!(s.degree(), Some(2));
        // 2ε_1 = 2ω_1 in B_2
        assert_eq!(s.weight(&b).unwrap(), WeightFunctional::fundamental(2, 1, 2));
    }

    #[test]
    fn state_text_roundtrip() {
        let d = d4();
        let v = VacuumModule::symbolic(&d);
        let s = v
            .parse_state("(k+2) * E(+1,-2)(-1) E(+1,+2)(-1) |0> - 1/4 * E(+2,+3)(-1) E(-2,-3)(-1)|0> + 3 * |0>")
            .unwrap();
        let t = s.display(&d);
        assert_eq!(v.parse_state(&t).unwrap(), s);
        assert!(v.parse_state("E(+1,-2) |0>").is_err());
    }
}
