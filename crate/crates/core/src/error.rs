use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank {rank} out of range for type {kind} (need rank >= {min})")]
    RankOutOfRange { kind: char, rank: usize, min: usize },

    #[error("elements belong to different root data ({0} vs {1})")]
    DatumMismatch(String, String),

    #[error("element is not weight-homogeneous")]
    NotHomogeneous,

    #[error("generator is not a highest-weight vector: ad(e) for simple root {0} does not kill it")]
    NotHighestWeight(String),

    #[error("weight {0} is not dominant integral")]
    NotDominant(String),

    #[error("weight depends on the formal parameter t")]
    Parametric,

    #[error("coefficients depend on the level k but no numeric level was supplied")]
    MissingLevel,

    #[error("diagram automorphism not defined for {0}")]
    AutomorphismUndefined(String),

    #[error("polynomial does not split into affine-linear factors: {0}")]
    NotSplit(String),

    #[error("branch has a solution set of dimension {0}; at most one free parameter is supported")]
    OutOfModel(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
