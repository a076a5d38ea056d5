//! Highest weights annihilated by zero-weight polynomial systems: assembly
//! from adjoint modules, branch enumeration over linear factors, the closed
//! form of the parametric families and the dominant-integral filter.

mod factor;
mod ordinary;

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::envalg::{AdjointModule, HPolynomial, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{solve_affine, Echelon};
use crate::poly::UniPoly;
use crate::rootsystem::{AlgebraType, DiagramAutomorphism, RootDatum};
use crate::scalar::{q, Q};
use crate::vertexalg::{LevelSet, VacuumModule, VertexState};
use crate::weight::{WeightFunctional, WeightRecord};

pub use factor::{linear_factors, LinearForm};
pub use ordinary::{filter_ordinary, ordinary_constraint, OrdinaryConstraint, OrdinaryFamily};

/// Concatenation of the `P_0` spanning sets, keeping a polynomial only when
/// it enlarges the span. Polynomials are kept as produced, not reduced.
pub fn assemble_system(d: &RootDatum, modules: &[AdjointModule]) -> Vec<HPolynomial> {
    let mut span: Echelon<Monomial> = Echelon::new();
    let mut out = Vec::new();
    for m in modules {
        for p in m.zero_weight_polynomials(d) {
            if span.insert(p.terms()) {
                out.push(p);
            }
        }
    }
    out
}

/// Output of [`solve_by_branching`].
#[derive(Clone, Debug)]
pub struct ClassificationResult {
    /// canonical families: parametric lines first, then points
    pub families: Vec<WeightFunctional>,
    /// descriptions of the generators behind the system
    pub source: Vec<String>,
    pub system: Vec<HPolynomial>,
    /// every polynomial of the system vanishes identically on every family
    pub residual_check: bool,
}

/// Reparametrizes a line so that its last moving coordinate reads exactly
/// `t`; two parametrizations of one line then coincide.
pub fn canonical_family(w: &WeightFunctional) -> WeightFunctional {
    let c = w.constant_part();
    let d = w.t_part();
    let Some(j) = d.iter().rposition(|x| !x.is_zero()) else {
        return w.clone();
    };
    let dj = d[j].clone();
    let d: Vec<Q> = d.iter().map(|x| x / &dj).collect();
    let cj = c[j].clone();
    let c: Vec<Q> = c.iter().zip(&d).map(|(a, b)| a - &cj * b).collect();
    WeightFunctional::affine(c, d)
}

/// Whether the point `p` lies on the line `f`.
fn on_line(p: &[Q], f: &WeightFunctional) -> bool {
    let f = canonical_family(f);
    let j = f.t_part().iter().rposition(|x| !x.is_zero()).unwrap();
    f.at(&p[j]) == p
}

/// Whether two families describe the same set of weights.
pub fn same_weight_set(a: &WeightFunctional, b: &WeightFunctional) -> bool {
    match (a.is_parametric(), b.is_parametric()) {
        (false, false) => a == b,
        (true, true) => canonical_family(a) == canonical_family(b),
        _ => false,
    }
}

/// Every polynomial vanishes identically in `t` on every family.
pub fn residuals_vanish(families: &[WeightFunctional], system: &[HPolynomial]) -> bool {
    families
        .iter()
        .all(|f| system.iter().all(|p| p.evaluate(f).is_zero()))
}

struct Branching<'a> {
    rank: usize,
    factors: &'a [Vec<LinearForm>],
    leaves: Vec<WeightFunctional>,
}

impl Branching<'_> {
    fn solve(&self, eqs: &[LinearForm]) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
        let a: Vec<Vec<Q>> = eqs.iter().map(|f| f.0[1..].to_vec()).collect();
        let b: Vec<Q> = eqs.iter().map(|f| -f.0[0].clone()).collect();
        solve_affine(&a, &b, self.rank)
    }

    fn descend(&mut self, depth: usize, eqs: &mut Vec<LinearForm>) -> Result<()> {
        if depth == self.factors.len() {
            let (x, ker) = self.solve(eqs).expect("pruned branches are consistent");
            let w = match ker.as_slice() {
                [] => WeightFunctional::constant(x),
                [v] => canonical_family(&WeightFunctional::affine(x, v.clone())),
                _ => return Err(Error::OutOfModel(ker.len())),
            };
            self.leaves.push(w);
            return Ok(());
        }
        for f in self.factors[depth].iter() {
            eqs.push(f.clone());
            if self.solve(eqs).is_some() {
                self.descend(depth + 1, eqs)?;
            }
            eqs.pop();
        }
        Ok(())
    }
}

/// Enumerates one vanishing linear factor per polynomial, solves each
/// resulting linear system exactly and collects the canonical solution
/// families.
pub fn solve_by_branching(rank: usize, system: &[HPolynomial]) -> Result<ClassificationResult> {
    let mut factors = Vec::new();
    for p in system {
        if p.is_zero() {
            continue;
        }
        let f = linear_factors(p)?;
        if f.is_empty() {
            // a nonzero constant never vanishes
            return Ok(ClassificationResult {
                families: Vec::new(),
                source: Vec::new(),
                system: system.to_vec(),
                residual_check: true,
            });
        }
        factors.push(f);
    }
    let mut b = Branching {
        rank,
        factors: &factors,
        leaves: Vec::new(),
    };
    b.descend(0, &mut Vec::new())?;
    let lines: BTreeSet<WeightFunctional> = b.leaves.iter().filter(|w| w.is_parametric()).cloned().collect();
    let points: BTreeSet<WeightFunctional> = b
        .leaves
        .iter()
        .filter(|w| !w.is_parametric())
        .filter(|p| !lines.iter().any(|l| on_line(&p.constant_part(), l)))
        .cloned()
        .collect();
    let families: Vec<WeightFunctional> = lines.into_iter().chain(points).collect();
    let residual_check = residuals_vanish(&families, system);
    Ok(ClassificationResult {
        families,
        source: Vec::new(),
        system: system.to_vec(),
        residual_check,
    })
}

/// Which of the two last fundamental weights carries the parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    OmegaLMinus1,
    OmegaL,
}

/// `Σ_j (i_j + 2 Σ_{s>j} (-1)^{s-j} i_s + (-1)^{k-j+1} (t+ℓ-1)) ω_{i_j} + t ω_v`
/// for `S = {i_1 < ... < i_k} ⊆ {1..ℓ-2}` and `v ∈ {ℓ-1, ℓ}`.
pub fn closed_form_mu(rank: usize, s: &[usize], variant: Variant) -> Result<WeightFunctional> {
    if s.windows(2).any(|p| p[0] >= p[1]) || s.iter().any(|&i| i == 0 || i + 2 > rank) {
        return Err(Error::Invalid(format!(
            "S = {s:?} must be strictly increasing inside 1..={}",
            rank.saturating_sub(2)
        )));
    }
    let k = s.len();
    let sign = |e: usize| if e.is_multiple_of(2) { q(1) } else { q(-1) };
    let mut c = vec![Q::zero(); rank];
    let mut d = vec![Q::zero(); rank];
    for j in 0..k {
        let mut cj = q(s[j] as i64);
        for t in j + 1..k {
            cj += sign(t - j) * q(2 * s[t] as i64);
        }
        let e = sign(k - j);
        // (-1)^{k-j+1} with 1-based j equals (-1)^{k-j} with 0-based j
        cj += &e * q(rank as i64 - 1);
        c[s[j] - 1] = cj;
        d[s[j] - 1] = e;
    }
    let v = match variant {
        Variant::OmegaLMinus1 => rank - 2,
        Variant::OmegaL => rank - 1,
    };
    d[v] = Q::one();
    Ok(WeightFunctional::affine(c, d))
}

/// Which singular vectors generate the ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealChoice {
    /// `v_n` for type D, the short-root vector for type B
    V,
    /// `v`, `θ(v)`, `θ²(v)` on `D_4`
    Triality,
}

/// Named generators of the chosen ideal over the symbolic level.
pub fn standard_generators(
    vm: &VacuumModule<'_, UniPoly>,
    choice: IdealChoice,
    n: u32,
) -> Result<Vec<(String, VertexState<UniPoly>)>> {
    let d = vm.datum();
    let v = match d.kind() {
        AlgebraType::D => vm.build_vn(n)?,
        AlgebraType::B => vm.build_b_vector()?,
    };
    let name = match d.kind() {
        AlgebraType::D if n == 1 => "v".to_string(),
        AlgebraType::D => format!("v_{n}"),
        AlgebraType::B => "v".to_string(),
    };
    match choice {
        IdealChoice::V => Ok(vec![(name, v)]),
        IdealChoice::Triality => {
            let th = DiagramAutomorphism::triality(d)?;
            let v2 = vm.apply_automorphism(&th, &v)?;
            let v3 = vm.apply_automorphism(&th, &v2)?;
            Ok(vec![
                (name.clone(), v),
                (format!("θ({name})"), v2),
                (format!("θ²({name})"), v3),
            ])
        }
    }
}

/// Common singular level of all generators, if there is exactly one.
pub fn common_level(vm: &VacuumModule<'_, UniPoly>, gens: &[(String, VertexState<UniPoly>)]) -> Result<Option<Q>> {
    let mut common: Option<LevelSet> = None;
    for (_, g) in gens {
        let l = vm.singular_levels(g)?;
        common = Some(match (common, l) {
            (None, l) => l,
            (Some(LevelSet::All), l) | (Some(l), LevelSet::All) => l,
            (Some(LevelSet::Finite(a)), LevelSet::Finite(b)) => {
                LevelSet::Finite(a.into_iter().filter(|x| b.contains(x)).collect())
            }
        });
    }
    Ok(match common {
        Some(LevelSet::Finite(v)) if v.len() == 1 => Some(v[0].clone()),
        _ => None,
    })
}

/// Full pipeline for a standard ideal.
pub fn classify(d: &RootDatum, choice: IdealChoice, n: u32) -> Result<(Vec<AdjointModule>, ClassificationResult)> {
    let vm = VacuumModule::symbolic(d);
    let gens = standard_generators(&vm, choice, n)?;
    classify_generators(&vm, &gens, None)
}

/// Zhu images, adjoint modules, `P_0` and branches for given generators.
/// The Zhu images are taken at `level`, or else at the common singular
/// level when there is one.
pub fn classify_generators(
    vm: &VacuumModule<'_, UniPoly>,
    gens: &[(String, VertexState<UniPoly>)],
    level: Option<&Q>,
) -> Result<(Vec<AdjointModule>, ClassificationResult)> {
    let d = vm.datum();
    let k = match level {
        Some(k) => Some(k.clone()),
        None => common_level(vm, gens)?,
    };
    let mut modules = Vec::new();
    let mut source = Vec::new();
    for (name, g) in gens {
        let u = vm.zhu_f(g, k.as_ref())?;
        let m = d.generate_adjoint_module(&u)?;
        source.push(format!("{name}: highest weight {}", m.highest_weight()));
        modules.push(m);
    }
    let system = assemble_system(d, &modules);
    let mut r = solve_by_branching(d.rank(), &system)?;
    r.source = source;
    Ok((modules, r))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FamilyRecord {
    pub coords: Vec<String>,
    pub display: String,
    pub parametric: bool,
    pub ordinary_constraint: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub source: Vec<String>,
    pub system: Vec<String>,
    pub residual_check: bool,
    pub families: Vec<FamilyRecord>,
    pub ordinary: Vec<FamilyRecord>,
}

fn family_record(w: &WeightFunctional) -> FamilyRecord {
    let r = WeightRecord::from(w);
    FamilyRecord {
        coords: r.coords,
        display: r.display,
        parametric: w.is_parametric(),
        ordinary_constraint: ordinary_constraint(w).to_string(),
    }
}

impl ClassificationResult {
    pub fn record(&self) -> ClassificationRecord {
        ClassificationRecord {
            source: self.source.clone(),
            system: self.system.iter().map(|p| p.to_string()).collect(),
            residual_check: self.residual_check,
            families: self.families.iter().map(family_record).collect(),
            ordinary: filter_ordinary(self).iter().map(|o| family_record(&o.family)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wf(c: &[i64], d: &[i64]) -> WeightFunctional {
        WeightFunctional::affine(c.iter().map(|&x| q(x)).collect(), d.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_mu(4, &[1], Variant::OmegaLMinus1).unwrap().to_string(),
            "(-2-t)ω_1 + tω_3"
        );
        assert_eq!(
            closed_form_mu(4, &[1, 2], Variant::OmegaLMinus1).unwrap().to_string(),
            "tω_1 + (-1-t)ω_2 + tω_3"
        );
        assert_eq!(closed_form_mu(4, &[], Variant::OmegaL).unwrap().to_string(), "tω_4");
        assert!(closed_form_mu(4, &[3], Variant::OmegaL).is_err());
        assert!(closed_form_mu(5, &[2, 1], Variant::OmegaL).is_err());
    }

    #[test]
    fn canonical_form_identifies_reparametrizations() {
        let a = wf(&[-2, 0, 0, 0], &[-1, 0, 1, 0]);
        // t -> -t + 3
        let b = wf(&[-5, 0, 3, 0], &[1, 0, -1, 0]);
        assert_eq!(canonical_family(&b), a);
        assert!(same_weight_set(&a, &b));
        assert!(!same_weight_set(&a, &wf(&[0, 0, 0, 0], &[0, 0, 0, 1])));
    }

    #[test]
    fn tiny_system() {
        // h_1 (h_1 + h_2 + 1) = 0 and h_2 (h_2 - 2) = 0 in rank 2
        let h1 = HPolynomial::var(2, 1);
        let h2 = HPolynomial::var(2, 2);
        let one = HPolynomial::constant(2, q(1));
        let p1 = h1.mul(&h1.add(&h2).add(&one));
        let p2 = h2.mul(&h2.sub(&one.scale(&q(2))));
        let r = solve_by_branching(2, &[p1, p2]).unwrap();
        let got: Vec<String> = r.families.iter().map(|w| w.to_string()).collect();
        assert_eq!(got.len(), 4);
        assert!(r.residual_check);
        for w in ["0", "-ω_1", "2ω_2", "-3ω_1 + 2ω_2"] {
            assert!(got.contains(&w.to_string()), "{w} missing from {got:?}");
        }
    }

    #[test]
    fn underdetermined_branch_rejected() {
        let h1 = HPolynomial::var(3, 1);
        assert!(matches!(solve_by_branching(3, &[h1]), Err(Error::OutOfModel(2))));
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let h1 = HPolynomial::var(1, 1);
        let r = solve_by_branching(1, &[h1.clone(), h1.sub(&HPolynomial::constant(1, q(1)))]).unwrap();
        assert!(r.families.is_empty());
    }
}
