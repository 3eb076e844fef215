use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree must be at least 1")]
    EmptyDegree,

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("index {index} is outside [1, {max}]")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("repeated index {0} in cycle")]
    RepeatedIndex(usize),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("set {0} is not lacunar")]
    NotLacunar(String),

    #[error("n = {n} exceeds the configured limit of {limit} for {what}")]
    CapExceeded { what: &'static str, n: usize, limit: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("element is not a probability distribution on S_n: {0}")]
    NotStochastic(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("no strong stationary time: P(1) = 0 means the top card never moves")]
    TopCardFrozen,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
