//! Error type shared by all modules.

/// Errors reported by the toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A distribution or run parameter violates its constraints.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The request is outside the modeled class of systems.
    #[error("out of scope: {0}")]
    OutOfScope(String),

    /// A station or customer index is outside the realization.
    #[error("index out of bounds: {0}")]
    OutOfBounds(String),

    /// An exhaustive enumeration would exceed its configured budget.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The realization does not contain enough customers for the request.
    #[error("realization too short: {0}")]
    InsufficientRealization(String),

    /// Throughput is undefined because every mean time is zero.
    #[error("undefined throughput: {0}")]
    UndefinedThroughput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
