//! Root systems of types D and B with a Chevalley basis, its structure
//! constants, the normalized invariant form and diagram automorphisms.
//!
//! Basis elements are addressed by `usize` indices in PBW order: negative
//! root vectors (height -1 first), then the simple coroots `h_1..h_ℓ`, then
//! positive root vectors by ascending height. Ties are broken by label.

mod automorphism;
mod element;
mod label;
pub mod matrix;
mod table;
mod weyl;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::solve_affine;
use crate::scalar::{q, to_i64, Q};

pub use automorphism::DiagramAutomorphism;
pub use element::LieElement;
pub use label::{BasisLabel, RootKind, RootLabel};
pub use table::{cache_path, TABLE_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraType {
    D,
    B,
}

impl AlgebraType {
    pub fn min_rank(self) -> usize {
        match self {
            AlgebraType::D => 3,
            AlgebraType::B => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            AlgebraType::D => 'D',
            AlgebraType::B => 'B',
        }
    }
}

impl std::str::FromStr for AlgebraType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "D" | "d" => Ok(AlgebraType::D),
            "B" | "b" => Ok(AlgebraType::B),
            _ => Err(Error::Parse(format!("unsupported algebra type `{s}`"))),
        }
    }
}

/// Identifies a root datum; elements carry it so mixing data is detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DatumKey {
    pub kind: AlgebraType,
    pub rank: usize,
}

impl fmt::Display for DatumKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

/// Immutable description of a simple Lie algebra of type D or B.
#[derive(Clone, Debug)]
pub struct RootDatum {
    key: DatumKey,
    basis: Vec<BasisLabel>,
    index: HashMap<BasisLabel, usize>,
    /// values of each basis weight on the simple coroots
    weights: Vec<Vec<i64>>,
    heights: Vec<i64>,
    /// `bracket[a][b]` = coordinates of `[x_a, x_b]`
    bracket: Vec<Vec<Vec<(usize, i64)>>>,
    form: Vec<Vec<Q>>,
    cartan: Vec<Vec<i64>>,
    simple: Vec<usize>,
    simple_neg: Vec<usize>,
    coroot_idx: Vec<usize>,
    opposite: Vec<Option<usize>>,
    /// `h_α` in simple coroot coordinates, per basis index of `e_α`
    coroot_coords: Vec<Option<Vec<i64>>>,
    highest: usize,
    simple_eps: Vec<Vec<Q>>,
    fundamental_eps: Vec<Vec<Q>>,
}

/// Root-theoretic data shared by both construction routes.
struct Skeleton {
    key: DatumKey,
    basis: Vec<BasisLabel>,
    index: HashMap<BasisLabel, usize>,
    weights: Vec<Vec<i64>>,
    heights: Vec<i64>,
    simple_eps: Vec<Vec<Q>>,
    simple_coroot_eps: Vec<Vec<Q>>,
    coroot_coords: Vec<Option<Vec<i64>>>,
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Coordinates of `v` in the basis `cols` (assumed independent, exact).
fn coordinates(cols: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    let n = v.len();
    let a: Vec<Vec<Q>> = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let (x, ker) = solve_affine(&a, v, cols.len()).expect("vector outside span");
    debug_assert!(ker.is_empty());
    x
}

impl Skeleton {
    fn new(kind: AlgebraType, rank: usize) -> Result<Self> {
        if rank < kind.min_rank() {
            return Err(Error::RankOutOfRange {
                kind: kind.letter(),
                rank,
                min: kind.min_rank(),
            });
        }
        if rank > 40 {
            return Err(Error::RankOutOfRange {
                kind: kind.letter(),
                rank,
                min: kind.min_rank(),
            });
        }
        let l = rank;
        let mut roots = Vec::new();
        for i in 1..=l as u8 {
            for j in i + 1..=l as u8 {
                for (pi, pj) in [(true, false), (true, true), (false, true), (false, false)] {
                    roots.push(RootLabel::pair(i, pi, j, pj));
                }
            }
            if kind == AlgebraType::B {
                roots.push(RootLabel::short(i));
                roots.push(RootLabel::short(i).neg());
            }
        }
        let simple_labels: Vec<RootLabel> = (1..=l as u8)
            .map(|i| {
                if (i as usize) < l {
                    RootLabel::minus(i, i + 1)
                } else {
                    match kind {
                        AlgebraType::D => RootLabel::plus(i - 1, i),
                        AlgebraType::B => RootLabel::short(i),
                    }
                }
            })
            .collect();
        let simple_eps: Vec<Vec<Q>> = simple_labels.iter().map(|r| to_q(&r.eps(l))).collect();
        let coroot_eps = |a: &[Q]| -> Vec<Q> {
            let n2 = dot(a, a);
            a.iter().map(|x| x * q(2) / &n2).collect()
        };
        let simple_coroot_eps: Vec<Vec<Q>> = simple_eps.iter().map(|a| coroot_eps(a)).collect();

        let height = |r: &RootLabel| -> i64 {
            let c = coordinates(&simple_eps, &to_q(&r.eps(l)));
            to_i64(&c.into_iter().sum()).unwrap()
        };
        let mut neg: Vec<(i64, RootLabel)> = roots
            .iter()
            .filter(|r| !r.is_positive())
            .map(|r| (height(r), *r))
            .collect();
        let mut pos: Vec<(i64, RootLabel)> = roots
            .iter()
            .filter(|r| r.is_positive())
            .map(|r| (height(r), *r))
            .collect();
        neg.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        pos.sort();

        let mut basis = Vec::new();
        let mut heights = Vec::new();
        for (h, r) in &neg {
            basis.push(BasisLabel::Root(*r));
            heights.push(*h);
        }
        for i in 1..=l {
            basis.push(BasisLabel::Coroot(i));
            heights.push(0);
        }
        for (h, r) in &pos {
            basis.push(BasisLabel::Root(*r));
            heights.push(*h);
        }
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut weights = Vec::new();
        let mut coroot_coords = Vec::new();
        for b in &basis {
            match b {
                BasisLabel::Root(r) => {
                    let e = to_q(&r.eps(l));
                    weights.push(
                        simple_coroot_eps
                            .iter()
                            .map(|h| to_i64(&dot(&e, h)).unwrap())
                            .collect(),
                    );
                    let c = coordinates(&simple_coroot_eps, &coroot_eps(&e));
                    coroot_coords.push(Some(c.iter().map(|x| to_i64(x).unwrap()).collect()));
                }
                BasisLabel::Coroot(_) => {
                    weights.push(vec![0; l]);
                    coroot_coords.push(None);
                }
            }
        }
        Ok(Skeleton {
            key: DatumKey { kind, rank },
            basis,
            index,
            weights,
            heights,
            simple_eps,
            simple_coroot_eps,
            coroot_coords,
        })
    }

    fn root_index(&self, r: RootLabel) -> usize {
        self.index[&BasisLabel::Root(r)]
    }

    /// Bracket entries determined by the root data alone: everything except
    /// `[e_α, e_β]` with `α+β` a root.
    fn fixed_bracket(&self, a: usize, b: usize) -> Option<Vec<(usize, i64)>> {
        let l = self.key.rank;
        match (self.basis[a], self.basis[b]) {
            (BasisLabel::Coroot(_), BasisLabel::Coroot(_)) => Some(vec![]),
            (BasisLabel::Coroot(i), BasisLabel::Root(_)) => {
                let c = self.weights[b][i - 1];
                Some(if c == 0 { vec![] } else { vec![(b, c)] })
            }
            (BasisLabel::Root(_), BasisLabel::Coroot(i)) => {
                let c = self.weights[a][i - 1];
                Some(if c == 0 { vec![] } else { vec![(a, -c)] })
            }
            (BasisLabel::Root(x), BasisLabel::Root(y)) => {
                if x == y.neg() {
                    let cc = self.coroot_coords[a].as_ref().unwrap();
                    return Some(
                        cc.iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .map(|(i, &c)| (self.index[&BasisLabel::Coroot(i + 1)], c))
                            .collect(),
                    );
                }
                let sum: Vec<i64> = x.eps(l).iter().zip(y.eps(l)).map(|(p, r)| p + r).collect();
                match RootLabel::from_eps(&sum) {
                    Some(r) if self.index.contains_key(&BasisLabel::Root(r)) => None,
                    _ => Some(vec![]),
                }
            }
        }
    }
}

impl RootDatum {
    /// Builds the datum, reading structure constants off the matrix
    /// realization.
    pub fn build(kind: AlgebraType, rank: usize) -> Result<Self> {
        let sk = Skeleton::new(kind, rank)?;
        let real = matrix::Realization::new(kind, rank);
        let mats: Vec<matrix::Mat> = sk
            .basis
            .iter()
            .map(|b| match b {
                BasisLabel::Root(r) => real.root_vectors[r].clone(),
                BasisLabel::Coroot(i) => real.coroots[i - 1].clone(),
            })
            .collect();
        let n = sk.basis.len();
        let mut consts = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if sk.fixed_bracket(a, b).is_some() {
                    continue;
                }
                let (BasisLabel::Root(x), BasisLabel::Root(y)) = (sk.basis[a], sk.basis[b]) else {
                    unreachable!()
                };
                let sum: Vec<i64> = x.eps(rank).iter().zip(y.eps(rank)).map(|(p, r)| p + r).collect();
                let target = sk.root_index(RootLabel::from_eps(&sum).unwrap());
                let c = matrix::commutator(&mats[a], &mats[b]);
                let t = &mats[target];
                let (pi, pj) = (0..t.len())
                    .flat_map(|i| (0..t.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !t[i][j].is_zero())
                    .unwrap();
                let coef = &c[pi][pj] / &t[pi][pj];
                debug_assert_eq!(c, matrix::scale(t, &coef));
                consts.insert((x, y), to_i64(&coef).expect("non-integral structure constant"));
            }
        }
        Ok(Self::assemble(sk, &consts))
    }

    /// Builds the datum from a structure-constant table produced by
    /// [`RootDatum::structure_table`].
    pub fn from_table(kind: AlgebraType, rank: usize, text: &str) -> Result<Self> {
        let consts = table::parse(kind, rank, text)?;
        let sk = Skeleton::new(kind, rank)?;
        let n = sk.basis.len();
        for a in 0..n {
            for b in 0..n {
                if sk.fixed_bracket(a, b).is_none() {
                    let (BasisLabel::Root(x), BasisLabel::Root(y)) = (sk.basis[a], sk.basis[b]) else {
                        unreachable!()
                    };
                    if !consts.contains_key(&(x, y)) {
                        return Err(Error::Parse(format!("table lacks the pair {x} {y}")));
                    }
                }
            }
        }
        Ok(Self::assemble(sk, &consts))
    }

    fn assemble(sk: Skeleton, consts: &HashMap<(RootLabel, RootLabel), i64>) -> Self {
        let n = sk.basis.len();
        let l = sk.key.rank;
        let mut bracket = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                bracket[a][b] = match sk.fixed_bracket(a, b) {
                    Some(v) => v,
                    None => {
                        let (BasisLabel::Root(x), BasisLabel::Root(y)) = (sk.basis[a], sk.basis[b]) else {
                            unreachable!()
                        };
                        let sum: Vec<i64> =
                            x.eps(l).iter().zip(y.eps(l)).map(|(p, r)| p + r).collect();
                        let t = sk.root_index(RootLabel::from_eps(&sum).unwrap());
                        vec![(t, consts[&(x, y)])]
                    }
                };
            }
        }
        let opposite: Vec<Option<usize>> = sk
            .basis
            .iter()
            .map(|b| match b {
                BasisLabel::Root(r) => Some(sk.root_index(r.neg())),
                BasisLabel::Coroot(_) => None,
            })
            .collect();

        // (h_i, h_j) = (α_i^∨, α_j^∨) in the ε inner product, (e_α, e_{-α}) = 2/(α,α)
        let mut form = vec![vec![Q::zero(); n]; n];
        for a in 0..n {
            match sk.basis[a] {
                BasisLabel::Coroot(i) => {
                    for j in 1..=l {
                        let b = sk.index[&BasisLabel::Coroot(j)];
                        form[a][b] = dot(&sk.simple_coroot_eps[i - 1], &sk.simple_coroot_eps[j - 1]);
                    }
                }
                BasisLabel::Root(r) => {
                    let e = to_q(&r.eps(l));
                    form[a][opposite[a].unwrap()] = q(2) / dot(&e, &e);
                }
            }
        }
        let cartan = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| to_i64(&dot(&sk.simple_eps[i], &sk.simple_coroot_eps[j])).unwrap())
                    .collect()
            })
            .collect();
        let simple: Vec<usize> = (0..l)
            .map(|i| {
                let r = RootLabel::from_eps(
                    &sk.simple_eps[i].iter().map(|x| to_i64(x).unwrap()).collect::<Vec<_>>(),
                )
                .unwrap();
                sk.root_index(r)
            })
            .collect();
        let simple_neg = simple.iter().map(|&s| opposite[s].unwrap()).collect();
        let coroot_idx = (1..=l).map(|i| sk.index[&BasisLabel::Coroot(i)]).collect();
        let highest = sk.root_index(RootLabel::plus(1, 2));
        // ω_i(α_j^∨) = δ_ij
        let fundamental_eps = (0..l)
            .map(|i| {
                let a: Vec<Vec<Q>> = sk.simple_coroot_eps.clone();
                let rhs: Vec<Q> = (0..l).map(|j| if i == j { Q::one() } else { Q::zero() }).collect();
                solve_affine(&a, &rhs, l).unwrap().0
            })
            .collect();
        RootDatum {
            key: sk.key,
            basis: sk.basis,
            index: sk.index,
            weights: sk.weights,
            heights: sk.heights,
            bracket,
            form,
            cartan,
            simple,
            simple_neg,
            coroot_idx,
            opposite,
            coroot_coords: sk.coroot_coords,
            highest,
            simple_eps: sk.simple_eps,
            fundamental_eps,
        }
    }

    pub fn key(&self) -> DatumKey {
        self.key
    }

    pub fn kind(&self) -> AlgebraType {
        self.key.kind
    }

    pub fn rank(&self) -> usize {
        self.key.rank
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_roots(&self) -> usize {
        self.dim() - self.rank()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> BasisLabel {
        self.basis[i]
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub fn parse_label(&self, s: &str) -> Result<usize> {
        let l: BasisLabel = s.parse()?;
        self.index_of(l)
            .ok_or_else(|| Error::Parse(format!("`{s}` is not a basis element of {}", self.key)))
    }

    /// Basis index of the root vector `e_r`.
    pub fn root(&self, r: RootLabel) -> usize {
        self.index[&BasisLabel::Root(r)]
    }

    /// Basis index of the simple coroot `h_i` (1-based).
    pub fn coroot(&self, i: usize) -> usize {
        self.coroot_idx[i - 1]
    }

    /// Basis index of `e_{α_i}` (1-based).
    pub fn simple_root(&self, i: usize) -> usize {
        self.simple[i - 1]
    }

    /// Basis index of `f_{α_i}` (1-based).
    pub fn simple_neg_root(&self, i: usize) -> usize {
        self.simple_neg[i - 1]
    }

    /// Basis index of `e_θ`, `θ = ε_1 + ε_2`.
    pub fn highest_root(&self) -> usize {
        self.highest
    }

    /// Basis index of `f_θ`.
    pub fn lowest_root(&self) -> usize {
        self.opposite[self.highest].unwrap()
    }

    pub fn opposite(&self, i: usize) -> Option<usize> {
        self.opposite[i]
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        matches!(self.basis[i], BasisLabel::Coroot(_))
    }

    pub fn is_positive(&self, i: usize) -> bool {
        matches!(self.basis[i], BasisLabel::Root(r) if r.is_positive())
    }

    pub fn is_negative(&self, i: usize) -> bool {
        matches!(self.basis[i], BasisLabel::Root(r) if !r.is_positive())
    }

    /// Weight of a basis element as values on the simple coroots.
    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.heights[i]
    }

    /// `[x_a, x_b]` as sparse integer coordinates.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.bracket[a][b]
    }

    /// `N_{α,β}` with `[e_α, e_β] = N_{α,β} e_{α+β}`; zero if `α+β` is not a root.
    pub fn structure_constant(&self, a: RootLabel, b: RootLabel) -> i64 {
        let (x, y) = (self.root(a), self.root(b));
        match self.bracket[x][y].as_slice() {
            [(t, c)] if !self.is_cartan(*t) => *c,
            _ => 0,
        }
    }

    /// `h_α = [e_α, e_{-α}]` in simple coroot coordinates.
    pub fn coroot_of(&self, r: RootLabel) -> &[i64] {
        self.coroot_coords[self.root(r)].as_ref().unwrap()
    }

    /// Normalized invariant form `(x_a, x_b)`, `(θ, θ) = 2`.
    pub fn form(&self, a: usize, b: usize) -> &Q {
        &self.form[a][b]
    }

    /// Cartan matrix `a_ij = α_i(h_j)`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn dual_coxeter(&self) -> i64 {
        1 + self.coroot_of(RootLabel::plus(1, 2)).iter().sum::<i64>()
    }

    pub fn simple_roots_eps(&self) -> &[Vec<Q>] {
        &self.simple_eps
    }

    /// Fundamental weights in `ε` coordinates.
    pub fn fundamental_weights(&self) -> &[Vec<Q>] {
        &self.fundamental_eps
    }

    /// Positive roots as labels, in basis order.
    pub fn positive_roots(&self) -> Vec<RootLabel> {
        self.basis
            .iter()
            .filter_map(|b| match b {
                BasisLabel::Root(r) if r.is_positive() => Some(*r),
                _ => None,
            })
            .collect()
    }

    /// Index of the root vector with the given weight, if the weight is a root.
    pub fn root_with_weight(&self, w: &[i64]) -> Option<usize> {
        (0..self.dim()).find(|&i| !self.is_cartan(i) && self.weights[i] == w)
    }
}
