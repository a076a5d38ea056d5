use std::fmt::Write as _;

use affvoa::classifier::{classify_generators, common_level, ClassificationRecord};
use affvoa::vertexalg::{SingularCell, SingularCellRecord};
use affvoa::weight::WeightRecord;
use affvoa::{Error, LevelSet, Result, RootDatum, UniPoly, VacuumModule, VertexState, Q};
use serde::Serialize;

use crate::config::RunConfig;

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct Residual {
    pub mode: String,
    pub residual: String,
}

#[derive(Serialize)]
pub struct GeneratorCheck {
    pub name: String,
    pub vector: String,
    pub residuals: Vec<Residual>,
    /// `["all"]` when singular at every level
    pub levels: Vec<String>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub generators: Vec<GeneratorCheck>,
    pub expect_level: Option<String>,
    pub verified: bool,
}

#[derive(Serialize)]
pub struct ZhuEntry {
    pub name: String,
    pub zhu_image: String,
    pub highest_weight: WeightRecord,
    pub module_dim: usize,
    pub zero_weight_dim: usize,
    pub polynomials: Vec<String>,
}

#[derive(Serialize)]
pub struct ZhuReport {
    pub algebra: String,
    pub level: Option<String>,
    pub generators: Vec<ZhuEntry>,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub algebra: String,
    pub level: Option<String>,
    pub classification: ClassificationRecord,
}

#[derive(Serialize)]
pub struct IdealDim {
    pub degree: u32,
    pub dim: usize,
}

#[derive(Serialize)]
pub struct SearchReport {
    pub algebra: String,
    pub level: String,
    pub max_degree: u32,
    pub generators: Vec<String>,
    pub ideal_dims: Vec<IdealDim>,
    pub cells: Vec<SingularCellRecord>,
    pub vacuum_only: bool,
}

#[derive(Serialize)]
pub struct FullReport {
    pub verify: VerifyReport,
    pub zhu: ZhuReport,
    pub classify: ClassifyReport,
}

fn level_strings(l: &LevelSet) -> Vec<String> {
    match l {
        LevelSet::All => vec!["all".into()],
        LevelSet::Finite(v) => v.iter().map(|x| x.to_string()).collect(),
    }
}

fn algebra(d: &RootDatum) -> String {
    d.key().to_string()
}

pub fn verify(cfg: &RunConfig, expect: Option<&Q>) -> Result<VerifyReport> {
    let d = cfg.datum()?;
    let vm = VacuumModule::symbolic(&d);
    let mut generators = Vec::new();
    let mut verified = true;
    for (name, g) in cfg.generators(&vm)? {
        let residuals = vm
            .singular_conditions(&g)?
            .into_iter()
            .map(|(mode, r)| Residual {
                mode,
                residual: r.display(&d),
            })
            .collect();
        let levels = vm.singular_levels(&g)?;
        verified &= !levels.is_empty() && expect.is_none_or(|k| levels.contains(k));
        generators.push(GeneratorCheck {
            name,
            vector: g.display(&d),
            residuals,
            levels: level_strings(&levels),
        });
    }
    Ok(VerifyReport {
        algebra: algebra(&d),
        generators,
        expect_level: expect.map(|k| k.to_string()),
        verified,
    })
}

fn level_for(cfg: &RunConfig, vm: &VacuumModule<'_, UniPoly>, gens: &[(String, VertexState<UniPoly>)]) -> Result<Option<Q>> {
    match &cfg.level {
        Some(k) => Ok(Some(k.clone())),
        None => common_level(vm, gens),
    }
}

pub fn zhu(cfg: &RunConfig) -> Result<ZhuReport> {
    let d = cfg.datum()?;
    let vm = VacuumModule::symbolic(&d);
    let gens = cfg.generators(&vm)?;
    let k = level_for(cfg, &vm, &gens)?;
    let mut out = Vec::new();
    for (name, g) in &gens {
        let u = vm.zhu_f(g, k.as_ref())?;
        let m = d.generate_adjoint_module(&u)?;
        out.push(ZhuEntry {
            name: name.clone(),
            zhu_image: u.display(&d),
            highest_weight: WeightRecord::from(m.highest_weight()),
            module_dim: m.dim(),
            zero_weight_dim: m.zero_weight_dim(d.rank()),
            polynomials: m.zero_weight_polynomials(&d).iter().map(|p| p.to_string()).collect(),
        });
    }
    Ok(ZhuReport {
        algebra: algebra(&d),
        level: k.map(|k| k.to_string()),
        generators: out,
    })
}

pub fn classify(cfg: &RunConfig) -> Result<ClassifyReport> {
    let d = cfg.datum()?;
    let vm = VacuumModule::symbolic(&d);
    let gens = cfg.generators(&vm)?;
    let k = level_for(cfg, &vm, &gens)?;
    let (_, r) = classify_generators(&vm, &gens, k.as_ref())?;
    Ok(ClassifyReport {
        algebra: algebra(&d),
        level: k.map(|k| k.to_string()),
        classification: r.record(),
    })
}

pub fn search(cfg: &RunConfig, max_degree: u32) -> Result<SearchReport> {
    let Some(k) = cfg.level.clone() else {
        return Err(Error::MissingLevel);
    };
    let d = cfg.datum()?;
    let sym = VacuumModule::symbolic(&d);
    let gens = cfg.generators(&sym)?;
    for (name, g) in &gens {
        if !sym.singular_levels(g)?.contains(&k) {
            return Err(Error::Invalid(format!("generator {name} is not singular at k = {k}")));
        }
    }
    let vm = VacuumModule::numeric(&d, k.clone());
    let numeric: Vec<VertexState<Q>> = gens.iter().map(|(_, g)| g.at_level(&k)).collect();
    let ideal = vm.build_ideal(&numeric, max_degree)?;
    let cells = vm.search_singular(&ideal, max_degree)?;
    Ok(SearchReport {
        algebra: algebra(&d),
        level: k.to_string(),
        max_degree,
        generators: gens.iter().map(|(n, _)| n.clone()).collect(),
        ideal_dims: (0..=max_degree)
            .map(|degree| IdealDim {
                degree,
                dim: ideal.degree_dim(degree),
            })
            .collect(),
        vacuum_only: SingularCell::vacuum_only(&cells),
        cells: cells.iter().map(|c| c.record(&d)).collect(),
    })
}

pub fn report(cfg: &RunConfig) -> Result<FullReport> {
    Ok(FullReport {
        verify: verify(cfg, None)?,
        zhu: zhu(cfg)?,
        classify: classify(cfg)?,
    })
}

fn level_sentence(levels: &[String]) -> String {
    match levels {
        [] => "no singular level".into(),
        [a] if a == "all" => "singular at all k".into(),
        [a] => format!("singular at k = {a}"),
        v => format!("singular at k in {{{}}}", v.join(", ")),
    }
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            let _ = writeln!(s, "{} generator {}", self.algebra, g.name);
            let _ = writeln!(s, "  vector: {}", g.vector);
            for r in &g.residuals {
                let _ = writeln!(s, "  {} -> {}", r.mode, r.residual);
            }
            let _ = writeln!(s, "  {}", level_sentence(&g.levels));
        }
        if let Some(k) = &self.expect_level {
            let verdict = if self.verified { "confirmed" } else { "NOT confirmed" };
            let _ = writeln!(s, "expected level {k}: {verdict}");
        }
        s
    }
}

impl ZhuReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let level = self.level.as_deref().unwrap_or("symbolic");
        let _ = writeln!(s, "{} at k = {level}", self.algebra);
        for g in &self.generators {
            let _ = writeln!(s, "generator {}", g.name);
            let _ = writeln!(s, "  F: {}", g.zhu_image);
            let _ = writeln!(s, "  adjoint module: highest weight {}, dim {}", g.highest_weight.display, g.module_dim);
            let _ = writeln!(s, "  zero-weight dim {}, polynomials:", g.zero_weight_dim);
            for p in &g.polynomials {
                let _ = writeln!(s, "    {p}");
            }
        }
        s
    }
}

impl ClassifyReport {
    pub fn text(&self) -> String {
        let c = &self.classification;
        let mut s = String::new();
        let level = self.level.as_deref().unwrap_or("symbolic");
        let _ = writeln!(s, "{} at k = {level}", self.algebra);
        for src in &c.source {
            let _ = writeln!(s, "  {src}");
        }
        let _ = writeln!(s, "system ({} polynomials):", c.system.len());
        for p in &c.system {
            let _ = writeln!(s, "  {p}");
        }
        let _ = writeln!(s, "families ({}):", c.families.len());
        for f in &c.families {
            let _ = writeln!(s, "  {}", f.display);
        }
        let check = if c.residual_check { "passed" } else { "FAILED" };
        let _ = writeln!(s, "residual check: {check}");
        let _ = writeln!(s, "ordinary ({}):", c.ordinary.len());
        for f in &c.ordinary {
            let _ = writeln!(s, "  {}    {}", f.display, f.ordinary_constraint);
        }
        s
    }
}

impl SearchReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} at k = {}, ideal generated by {}, up to degree {}",
            self.algebra,
            self.level,
            self.generators.join(", "),
            self.max_degree
        );
        for d in &self.ideal_dims {
            let _ = writeln!(s, "  ideal dim in degree {}: {}", d.degree, d.dim);
        }
        for c in &self.cells {
            let _ = writeln!(s, "degree {}, weight {}: {} singular", c.degree, c.hweight.display, c.dimension);
            for b in &c.basis {
                let _ = writeln!(s, "  {b}");
            }
        }
        if self.vacuum_only {
            let _ = writeln!(s, "vacuum only");
        }
        s
    }
}

impl FullReport {
    pub fn text(&self) -> String {
        [self.verify.text(), self.zhu.text(), self.classify.text()].join("\n")
    }
}
