//! Exact computations with simple Lie algebras of types D and B and their
//! universal affine vertex algebras at a symbolic level.

pub mod classifier;
pub mod envalg;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod rootsystem;
pub mod scalar;
mod text;
pub mod vertexalg;
pub mod weight;

pub use envalg::{AdjointModule, EnvElement, HPolynomial};
pub use error::{Error, Result};
pub use poly::UniPoly;
pub use rootsystem::{AlgebraType, BasisLabel, DiagramAutomorphism, LieElement, RootDatum, RootLabel};
pub use scalar::Q;
pub use vertexalg::{IdealData, LevelSet, VacuumModule, VertexState};
pub use weight::WeightFunctional;
