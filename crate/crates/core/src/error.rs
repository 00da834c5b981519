use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A difference-table row beyond the configured cap was requested.
    #[error("requested table row {requested} exceeds the configured cap of {cap} rows")]
    ResourceLimit { requested: usize, cap: usize },

    /// A value that must be exact (an integer, an exact quotient) was not.
    /// This always indicates a bug upstream, never bad input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("constant term is not invertible")]
    NonInvertible,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid precision: {0} bits (at least 53 required)")]
    InvalidPrecision(u32),

    /// Coefficients computed at two working precisions disagree.
    #[error("working precision too low for coefficient {index}: {detail}")]
    PrecisionTooLow { index: usize, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
