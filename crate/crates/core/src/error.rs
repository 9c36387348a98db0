use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation would need more memory than the configured budget.
    #[error("memory budget of {budget} bytes exceeded at {stage} (needs about {needed} bytes)")]
    Resource {
        stage: String,
        needed: u128,
        budget: u64,
    },
    /// An exhaustive search was asked to go beyond its hard cap.
    #[error("{what} = {value} exceeds the exhaustive cap {cap}; use the certificate route instead")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    /// Malformed input structure (nesting, divisibility, list lengths).
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid count: r = {r} exceeds 2^{size}")]
    InvalidCount { r: String, size: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{n} has a prime factor larger than {limit}; only smooth moduli are supported")]
    NotSmooth { n: String, limit: u64 },
    #[error("value overflowed a 64-bit word: {0}")]
    Overflow(String),
}
