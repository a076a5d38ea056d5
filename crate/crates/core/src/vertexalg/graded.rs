use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{word_degree, word_weight, Mode, ModeWord, VacuumModule, VertexState};
use crate::error::{Error, Result};
use crate::linalg::{sparse_kernel, Echelon};
use crate::rootsystem::{DatumKey, RootDatum};
use crate::scalar::{to_i64, Q};
use crate::weight::{WeightFunctional, WeightRecord};

/// All normal-ordered monomials of one conformal degree and `h`-weight.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub degree: u32,
    pub hweight: WeightFunctional,
    pub basis: Vec<ModeWord>,
}

impl GradedComponent {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn push_words(modes: &[Mode], start: usize, left: u32, cur: &mut ModeWord, out: &mut Vec<ModeWord>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for (i, m) in modes.iter().enumerate().skip(start) {
        if m.depth <= left {
            cur.push(*m);
            push_words(modes, i, left - m.depth, cur, out);
            cur.pop();
        }
    }
}

/// Every normal-ordered monomial of conformal degree `degree`.
pub(crate) fn words_of_degree(d: &RootDatum, degree: u32) -> Vec<ModeWord> {
    let mut modes: Vec<Mode> = (1..=degree.max(1))
        .flat_map(|depth| (0..d.dim()).map(move |x| Mode { depth, x }))
        .collect();
    modes.sort();
    let mut out = Vec::new();
    push_words(&modes, 0, degree, &mut Vec::new(), &mut out);
    out
}

fn weight_key(w: &WeightFunctional) -> Result<Vec<i64>> {
    if w.is_parametric() {
        return Err(Error::Parametric);
    }
    w.constant_part()
        .iter()
        .map(|c| to_i64(c).ok_or_else(|| Error::Invalid(format!("non-integral weight {w}"))))
        .collect()
}

pub fn graded_component(d: &RootDatum, degree: u32, hweight: &WeightFunctional) -> Result<GradedComponent> {
    let key = weight_key(hweight)?;
    let basis = words_of_degree(d, degree)
        .into_iter()
        .filter(|w| word_weight(d, w) == key)
        .collect();
    Ok(GradedComponent {
        degree,
        hweight: hweight.clone(),
        basis,
    })
}

/// The submodule generated by a list of states, held as one echelon basis
/// per (degree, weight) cell up to a degree cutoff. Numeric level only.
#[derive(Clone, Debug)]
pub struct IdealData {
    key: DatumKey,
    level: Q,
    generators: Vec<VertexState<Q>>,
    cutoff: u32,
    cells: BTreeMap<(u32, Vec<i64>), Echelon<ModeWord>>,
}

impl IdealData {
    pub fn generators(&self) -> &[VertexState<Q>] {
        &self.generators
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn level(&self) -> &Q {
        &self.level
    }

    fn cell(&self, degree: u32, w: &[i64]) -> Option<&Echelon<ModeWord>> {
        self.cells.get(&(degree, w.to_vec()))
    }

    /// Spanning set of the ideal inside one graded component.
    pub fn component(&self, d: &RootDatum, degree: u32, hweight: &WeightFunctional) -> Result<Vec<VertexState<Q>>> {
        if degree > self.cutoff {
            return Err(Error::Invalid(format!(
                "degree {degree} above the ideal cutoff {}",
                self.cutoff
            )));
        }
        let w = weight_key(hweight)?;
        Ok(self
            .cell(degree, &w)
            .map(|e| {
                e.rows()
                    .map(|r| VertexState {
                        key: d.key(),
                        terms: r.clone(),
                    })
                    .collect()
            })
            .unwrap_or_default())
    }

    pub fn dim(&self, degree: u32, hweight: &WeightFunctional) -> usize {
        weight_key(hweight)
            .ok()
            .and_then(|w| self.cell(degree, &w))
            .map_or(0, Echelon::dim)
    }

    /// Total dimension of the ideal in one degree.
    pub fn degree_dim(&self, degree: u32) -> usize {
        self.cells
            .iter()
            .filter(|((n, _), _)| *n == degree)
            .map(|(_, e)| e.dim())
            .sum()
    }

    pub fn contains(&self, d: &RootDatum, s: &VertexState<Q>) -> bool {
        let mut parts: BTreeMap<(u32, Vec<i64>), BTreeMap<ModeWord, Q>> = BTreeMap::new();
        for (w, c) in s.terms() {
            parts
                .entry((word_degree(w), word_weight(d, w)))
                .or_default()
                .insert(w.clone(), c.clone());
        }
        parts
            .iter()
            .all(|(k, v)| self.cells.get(k).is_some_and(|e| e.contains(v)))
    }
}

/// Singular vectors found in one (degree, weight) cell of a quotient.
#[derive(Clone, Debug)]
pub struct SingularCell {
    pub degree: u32,
    pub hweight: WeightFunctional,
    pub vectors: Vec<VertexState<Q>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SingularCellRecord {
    pub degree: u32,
    pub hweight: WeightRecord,
    pub dimension: usize,
    pub basis: Vec<String>,
}

impl SingularCell {
    pub fn record(&self, d: &RootDatum) -> SingularCellRecord {
        SingularCellRecord {
            degree: self.degree,
            hweight: WeightRecord::from(&self.hweight),
            dimension: self.vectors.len(),
            basis: self.vectors.iter().map(|v| v.display(d)).collect(),
        }
    }

    /// Whether the cells amount to the vacuum line alone.
    pub fn vacuum_only(cells: &[SingularCell]) -> bool {
        matches!(cells, [c] if c.degree == 0 && c.vectors.len() == 1)
    }
}

fn split_cells(d: &RootDatum, s: &VertexState<Q>) -> Vec<((u32, Vec<i64>), BTreeMap<ModeWord, Q>)> {
    let mut parts: BTreeMap<(u32, Vec<i64>), BTreeMap<ModeWord, Q>> = BTreeMap::new();
    for (w, c) in s.terms() {
        parts
            .entry((word_degree(w), word_weight(d, w)))
            .or_default()
            .insert(w.clone(), c.clone());
    }
    parts.into_iter().collect()
}

impl VacuumModule<'_, Q> {
    /// `J = U(ĝ) · gens` up to degree `cutoff`: close the generators under
    /// `g[t]` (generated by `e_i(0)`, `f_i(0)`, `f_θ(1)`), then raise degree
    /// with the modes `x(-1)`, which generate the negative part.
    pub fn build_ideal(&self, gens: &[VertexState<Q>], cutoff: u32) -> Result<IdealData> {
        let d = self.d;
        for g in gens {
            self.owns(g)?;
        }
        let mut lowering: Vec<(usize, i64)> = Vec::new();
        for i in 1..=d.rank() {
            lowering.push((d.simple_root(i), 0));
            lowering.push((d.simple_neg_root(i), 0));
        }
        lowering.push((d.lowest_root(), 1));

        // U(g[t]) gens, over all degrees it reaches
        let mut base: BTreeMap<(u32, Vec<i64>), Echelon<ModeWord>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for g in gens {
            for (k, part) in split_cells(d, g) {
                if base.entry(k.clone()).or_default().insert(&part) {
                    queue.push_back(VertexState {
                        key: d.key(),
                        terms: part,
                    });
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            for &(x, n) in &lowering {
                let t = self.mode_act(x, n, &s);
                if t.is_zero() {
                    continue;
                }
                for (k, part) in split_cells(d, &t) {
                    if base.entry(k).or_default().insert(&part) {
                        queue.push_back(VertexState {
                            key: d.key(),
                            terms: part,
                        });
                    }
                }
            }
        }

        let mut cells: BTreeMap<(u32, Vec<i64>), Echelon<ModeWord>> = base
            .into_iter()
            .filter(|((n, _), e)| *n <= cutoff && !e.is_empty())
            .collect();
        for degree in 1..=cutoff {
            let lower: Vec<BTreeMap<ModeWord, Q>> = cells
                .iter()
                .filter(|((n, _), _)| *n == degree - 1)
                .flat_map(|(_, e)| e.rows().cloned())
                .collect();
            for row in &lower {
                let s = VertexState {
                    key: d.key(),
                    terms: row.clone(),
                };
                for x in 0..d.dim() {
                    let t = self.mode_act(x, -1, &s);
                    for (k, part) in split_cells(d, &t) {
                        cells.entry(k).or_default().insert(&part);
                    }
                }
            }
        }
        Ok(IdealData {
            key: d.key(),
            level: self.level.clone(),
            generators: gens.to_vec(),
            cutoff,
            cells,
        })
    }

    /// Singular vectors of `N(k,0)/J` in every cell of degree at most
    /// `max_degree`, as representatives supported off the ideal's pivots.
    pub fn search_singular(&self, ideal: &IdealData, max_degree: u32) -> Result<Vec<SingularCell>> {
        let d = self.d;
        if ideal.key != d.key() {
            return Err(Error::DatumMismatch(d.key().to_string(), ideal.key.to_string()));
        }
        if ideal.level != self.level {
            return Err(Error::Invalid(format!(
                "ideal built at level {} but searching at level {}",
                ideal.level, self.level
            )));
        }
        if max_degree > ideal.cutoff {
            return Err(Error::Invalid(format!(
                "search degree {max_degree} above the ideal cutoff {}",
                ideal.cutoff
            )));
        }
        let theta = d.weight(d.highest_root()).to_vec();
        let empty = Echelon::new();
        let mut found = Vec::new();
        for degree in 0..=max_degree {
            let mut by_weight: BTreeMap<Vec<i64>, Vec<ModeWord>> = BTreeMap::new();
            for w in words_of_degree(d, degree) {
                by_weight.entry(word_weight(d, &w)).or_default().push(w);
            }
            for (lambda, words) in by_weight {
                let jcell = ideal.cell(degree, &lambda).unwrap_or(&empty);
                let unknowns: Vec<ModeWord> = words.into_iter().filter(|w| !jcell.is_pivot(w)).collect();
                if unknowns.is_empty() {
                    continue;
                }
                let mut targets: Vec<(usize, i64, u32, Vec<i64>)> = Vec::new();
                for i in 1..=d.rank() {
                    let e = d.simple_root(i);
                    let w: Vec<i64> = lambda.iter().zip(d.weight(e)).map(|(a, b)| a + b).collect();
                    targets.push((e, 0, degree, w));
                }
                if degree >= 1 {
                    let w: Vec<i64> = lambda.iter().zip(&theta).map(|(a, b)| a - b).collect();
                    targets.push((d.lowest_root(), 1, degree - 1, w));
                }
                let cols: Vec<BTreeMap<(usize, ModeWord), Q>> = unknowns
                    .iter()
                    .map(|m| {
                        let mut s = BTreeMap::new();
                        s.insert(m.clone(), Q::from_integer(1.into()));
                        let s = VertexState { key: d.key(), terms: s };
                        let mut col = BTreeMap::new();
                        for (ti, (x, n, deg, w)) in targets.iter().enumerate() {
                            let img = self.mode_act(*x, *n, &s);
                            let red = ideal.cell(*deg, w).unwrap_or(&empty).reduce(&img.terms);
                            for (k, c) in red {
                                col.insert((ti, k), c);
                            }
                        }
                        col
                    })
                    .collect();
                let kernel = sparse_kernel(&cols);
                if kernel.is_empty() {
                    continue;
                }
                let vectors = kernel
                    .into_iter()
                    .map(|v| VertexState {
                        key: d.key(),
                        terms: v.into_iter().map(|(j, c)| (unknowns[j].clone(), c)).collect(),
                    })
                    .collect();
                found.push(SingularCell {
                    degree,
                    hweight: WeightFunctional::from_ints(&lambda),
                    vectors,
                });
            }
        }
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{AlgebraType, DiagramAutomorphism};
    use crate::scalar::q;

    #[test]
    fn small_components() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        let z = WeightFunctional::zero(4);
        assert_eq!(graded_component(&d, 0, &z).unwrap().dimension(), 1);
        assert_eq!(graded_component(&d, 1, &z).unwrap().dimension(), 4);
        // h_i(-2): 4, e_α(-1) f_α(-1): 12, h_i(-1) h_j(-1): 10
        assert_eq!(graded_component(&d, 2, &z).unwrap().dimension(), 26);
    }

    #[test]
    fn ideal_of_v() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        let vm = VacuumModule::numeric(&d, q(-2));
        let v = vm.build_vn(1).unwrap();
        let j = vm.build_ideal(std::slice::from_ref(&v), 3).unwrap();
        assert!(j.contains(&d, &v));
        assert_eq!(j.degree_dim(0), 0);
        assert_eq!(j.degree_dim(1), 0);
        assert_eq!(j.degree_dim(2), 35);
        // degree-2 part is a g-submodule and the whole is stable under g[t]
        for deg in 2..=3 {
            for row in j.cells.iter().filter(|((n, _), _)| *n == deg).flat_map(|(_, e)| e.rows()) {
                let s = VertexState {
                    key: d.key(),
                    terms: row.clone(),
                };
                for x in 0..d.dim() {
                    assert!(j.contains(&d, &vm.mode_act(x, 0, &s)));
                    assert!(j.contains(&d, &vm.mode_act(x, 1, &s)));
                }
            }
        }
    }

    #[test]
    fn triality_images_survive_quotient_by_v() {
        let d = RootDatum::build(AlgebraType::D, 4).unwrap();
        let vm = VacuumModule::numeric(&d, q(-2));
        let v = vm.build_vn(1).unwrap();
        let j = vm.build_ideal(std::slice::from_ref(&v), 2).unwrap();
        let cells = vm.search_singular(&j, 2).unwrap();
        let mut ws: Vec<(u32, WeightFunctional, usize)> = cells
            .iter()
            .map(|c| (c.degree, c.hweight.clone(), c.vectors.len()))
            .collect();
        ws.sort_by(|a, b| (a.0, a.1.to_string()).cmp(&(b.0, b.1.to_string())));
        assert_eq!(
            ws,
            vec![
                (0, WeightFunctional::zero(4), 1),
                (2, WeightFunctional::fundamental(4, 3, 2), 1),
                (2, WeightFunctional::fundamental(4, 4, 2), 1),
            ]
        );
        let th = DiagramAutomorphism::triality(&d).unwrap();
        let tv = vm.apply_automorphism(&th, &v).unwrap();
        assert_eq!(tv.weight(&d).unwrap(), WeightFunctional::fundamental(4, 3, 2));
        assert!(!j.contains(&d, &tv));
    }
}
