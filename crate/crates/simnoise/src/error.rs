//! Error type shared by the whole crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Signals that must share length and sample rate do not.
    #[error("misaligned signals: {0}")]
    Misaligned(String),

    /// An operation needs more repetitions than the set provides.
    #[error("needs at least {required} trials, got {found}")]
    InsufficientTrials { required: usize, found: usize },

    /// A sample or observation is NaN or infinite.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// Fewer observations than the statistic's minimum.
    #[error("{context}: needs at least {required} observations, got {found}")]
    TooFewObservations {
        context: &'static str,
        required: usize,
        found: usize,
    },

    /// A variance that appears in a denominator is zero.
    #[error("zero variance in {0}")]
    ZeroVariance(&'static str),

    /// Factorial cells are missing or have unequal counts.
    #[error("unbalanced design: {0}")]
    Unbalanced(String),

    /// A ratio's denominator is exactly zero; the statistic is undefined.
    #[error("degenerate statistic: {0} is zero")]
    Degenerate(&'static str),
}
