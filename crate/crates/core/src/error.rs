use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("positivity is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("Labute sum for n={n}, d={d}, k={k} is not divisible by n")]
    NonIntegralResult { n: u32, d: u32, k: u32 },
    #[error("caps requested through n={n_max}, but they are only proven for n < p-1 = {limit}")]
    RangeExceeded { n_max: u32, limit: u32 },
    #[error("hypothesis not satisfied: {0}")]
    InvalidHypothesis(String),
    #[error("every cap through n={0} was reached without satisfying the inequality")]
    CapExhausted(u32),
    #[error("horizon {horizon} is below the stabilization bound {required}")]
    HorizonTooSmall { horizon: usize, required: usize },
    #[error("sequence data does not stabilize: {0}")]
    NotStabilized(String),
    #[error("group of order {order} exceeds the size limit {limit}")]
    SizeLimit { order: usize, limit: usize },
    #[error("Fox derivative requires a polynomial without constant term")]
    NonzeroConstantTerm,
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
