use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bit string length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("objective vector arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("need at least two solutions, got {0}")]
    TooFewSolutions(usize),

    #[error("invalid problem parameters: {0}")]
    InvalidParams(String),

    #[error("point {point:?} lies below reference point {reference:?}")]
    BelowReference { point: Vec<i64>, reference: Vec<i64> },

    #[error("oracle budget exceeded: {0}")]
    OracleBudget(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
