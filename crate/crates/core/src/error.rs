use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An expansion ran out of partial quotients before a computation finished.
    #[error("insufficient prefix: needed quotient index {needed}, only {available} available")]
    InsufficientPrefix { needed: usize, available: usize },

    /// A tail quotient was zero or negative.
    #[error("invalid partial quotient at index {index}: {value} (tail quotients must be >= 1)")]
    InvalidQuotient { index: usize, value: String },

    /// Fixed-width scalar overflowed during a recursion.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Targeting precondition `y > (10/eps)^(1/eps)` failed.
    #[error("precondition violated: y = {y} is too small for eps = {eps}; need y >= {min_y}")]
    PreconditionViolated {
        y: String,
        eps: String,
        min_y: String,
    },

    #[error("trail start ({x}, {y}) is not coprime")]
    NonCoprimeStart { x: String, y: String },

    #[error("matrix is singular")]
    SingularMatrix,

    /// The input range still contains the pole of the homography when the input ran out.
    #[error("pole crossing: consumed {consumed} quotients and the image is still unbounded")]
    PoleCrossing { consumed: usize },

    /// An integer grew past the configured decimal digit budget.
    #[error("resource limit: value with ~{digits} decimal digits exceeds the budget of {budget}")]
    ResourceLimit { digits: u64, budget: u64 },

    #[error("callback failed: {0}")]
    Callback(String),

    #[error("prefix map demanded {demanded} input entries, only {available} available")]
    PrefixDemand { demanded: usize, available: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
