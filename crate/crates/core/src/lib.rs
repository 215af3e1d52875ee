//! Exact decomposition and classification of oriented cycles of linear
//! mappings over ℚ and ℚ(i).

pub mod commands;
pub mod cycle;
pub mod document;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod generate;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod regularize;
pub mod similarity;

pub use cycle::{index_mod, ChainSummand, Cycle, TransformationSystem, WitnessFailure};
pub use error::{Error, Result};
pub use field::{Field, GaussianRational, Rational};
pub use matrix::Matrix;
pub use poly::Poly;
