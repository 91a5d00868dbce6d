use thiserror::Error;

/// Errors raised by the counting kernels and the numeric routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request would exceed the configured memory or integer budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The evaluation point is too close to a pole.
    #[error("pole proximity: {0}")]
    Pole(String),

    /// A representation table does not reach the required index.
    #[error("table too short: need n <= {needed}, table stops at {available}")]
    TableTooShort { needed: u64, available: u64 },

    /// A least-squares system is too ill-conditioned to trust.
    #[error("ill-conditioned fit (condition estimate {condition:.3e}); try a lower degree")]
    IllConditioned { condition: f64 },

    /// A serialized table is malformed or fails its checksum.
    #[error("invalid table format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn capacity(msg: impl Into<String>) -> Error {
    Error::Capacity(msg.into())
}
