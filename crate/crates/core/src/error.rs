use thiserror::Error;

/// Errors raised by the numerical library and the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operator dimension {0} exceeds the supported maximum of 4")]
    DimensionTooLarge(usize),

    #[error("matrix entries do not fill a {dim}x{dim} grid ({len} entries)")]
    BadShape { dim: usize, len: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian (max |A - A^H| = {0:.3e})")]
    NotHermitian(f64),

    #[error("unknown group: {0}")]
    UnknownGroup(String),

    #[error("unknown label `{label}` for group {group}")]
    UnknownLabel { group: String, label: String },

    #[error("coefficient vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid control split: {0}")]
    InvalidSplit(String),

    #[error("degenerate spectrum: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value encountered at integration step {step}")]
    Diverged { step: usize },

    #[error("unknown check id: {0}")]
    UnknownCheck(String),

    #[error("line {line}: {msg}")]
    ConfigLine { line: usize, msg: String },

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
