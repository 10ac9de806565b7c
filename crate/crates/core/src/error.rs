use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("measure has no weights")]
    EmptyMeasure,
    #[error("weight {index} is not finite")]
    NonFiniteWeight { index: usize },
    #[error("weights are not normalized: {0}")]
    NotNormalized(&'static str),
    #[error("cost entry ({row}, {col}) is negative")]
    NegativeCost { row: usize, col: usize },
    #[error("cost entry ({row}, {col}) is not finite")]
    NonFiniteCost { row: usize, col: usize },
    #[error("plan entry ({row}, {col}) is positive")]
    PositivePlanEntry { row: usize, col: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("weights must be distinct apart from the leading zeros")]
    WeightsNotDistinct,
    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("invalid probability: {0}")]
    InvalidProbability(String),
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
