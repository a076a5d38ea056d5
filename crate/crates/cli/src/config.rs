use std::path::PathBuf;

use affvoa::classifier::{standard_generators, IdealChoice};
use affvoa::scalar::parse_q;
use affvoa::{AlgebraType, Error, Result, RootDatum, UniPoly, VacuumModule, VertexState, Q};
use clap::{Args, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Ideal {
    /// the vector `v_n` (type D) or the short-root vector (type B)
    V,
    /// `v`, `θ(v)`, `θ²(v)` on D4
    Triality,
}

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct CommonArgs {
    /// algebra type, D or B
    #[arg(long = "type", default_value = "D")]
    pub kind: AlgebraType,
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
    /// family parameter of `v_n`
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// use the type B short-root vector
    #[arg(long)]
    pub b_vector: bool,
    /// custom generator, e.g. 'E(+1,-2)(-1)|0>' (repeatable)
    #[arg(long = "state")]
    pub states: Vec<String>,
    #[arg(long, value_enum)]
    pub ideal: Option<Ideal>,
    /// exact rational level such as -2 or -3/2; symbolic when omitted
    #[arg(long, allow_hyphen_values = true)]
    pub level: Option<String>,
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub kind: AlgebraType,
    pub rank: usize,
    pub n: u32,
    pub states: Vec<String>,
    pub ideal: IdealChoice,
    pub level: Option<Q>,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(a: &CommonArgs, cache_dir: Option<PathBuf>) -> Result<Self> {
        if a.b_vector && a.kind != AlgebraType::B {
            return Err(Error::Invalid("--b-vector needs --type B".into()));
        }
        if a.n == 0 {
            return Err(Error::Invalid("--n must be positive".into()));
        }
        let ideal = match a.ideal {
            None | Some(Ideal::V) => IdealChoice::V,
            Some(Ideal::Triality) => {
                if (a.kind, a.rank) != (AlgebraType::D, 4) {
                    return Err(Error::Invalid("the triality ideal needs --type D --rank 4".into()));
                }
                IdealChoice::Triality
            }
        };
        if !a.states.is_empty() && a.ideal.is_some() {
            return Err(Error::Invalid("--state and --ideal are exclusive".into()));
        }
        let level = a.level.as_deref().map(parse_q).transpose()?;
        Ok(RunConfig {
            kind: a.kind,
            rank: a.rank,
            n: a.n,
            states: a.states.clone(),
            ideal,
            level,
            cache_dir,
        })
    }

    pub fn datum(&self) -> Result<RootDatum> {
        Ok(RootDatum::load_cached(self.kind, self.rank, self.cache_dir.as_deref())?.0)
    }

    /// Named generators over the symbolic level.
    pub fn generators(&self, vm: &VacuumModule<'_, UniPoly>) -> Result<Vec<(String, VertexState<UniPoly>)>> {
        if self.states.is_empty() {
            return standard_generators(vm, self.ideal, self.n);
        }
        self.states
            .iter()
            .map(|s| Ok((s.trim().to_string(), vm.parse_state(s)?)))
            .collect()
    }
}
