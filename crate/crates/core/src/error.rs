use thiserror::Error;

/// Errors raised by validation, evaluation, bounds and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: at least one probability is required")]
    EmptyInput,

    #[error("probability at index {index} is not positive: {value}")]
    NonPositiveProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, not 1 (tolerance 1e-9)")]
    SumNotOne { sum: f64 },

    #[error("probabilities are not sorted nonincreasing at index {index}")]
    NotSorted { index: usize },

    #[error("length vector has {found} entries, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Renyi order must be positive and different from 1, got {0}")]
    AlphaOutOfRange(f64),

    #[error("q = {0} is outside the admissible range")]
    QOutOfRange(f64),

    #[error("d = {0} must lie in (-1, 0) or (0, inf)")]
    DOutOfRange(f64),

    #[error("probability {0} is outside the admissible range")]
    POutOfRange(f64),

    #[error("symbol index {index} out of range for alphabet of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("lengths violate the Kraft inequality")]
    KraftViolation,

    #[error("no complete code on {n} symbols fits within max length {max_len}")]
    InfeasibleMaxLen { n: usize, max_len: u32 },

    #[error("alphabet of size {n} exceeds the oracle cap {cap}")]
    AlphabetTooLarge { n: usize, cap: usize },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("witness parameters outside the construction's range: {0}")]
    ParamsOutOfProofRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
