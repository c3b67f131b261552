//! Crate-wide error type.

use thiserror::Error;

use crate::beamspace::Domain;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("vector must contain at least one entry")]
    EmptyVector,

    #[error("expected a vector in the {expected:?} domain, got {found:?}")]
    DomainMismatch { expected: Domain, found: Domain },

    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("minimum spacing {separation} rad is infeasible for {paths} paths")]
    InfeasibleSeparation { separation: f64, paths: usize },

    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
