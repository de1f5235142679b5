use thiserror::Error;

/// Errors raised by the computations in this crate.
///
/// The variants are grouped by who is at fault: malformed or out-of-contract
/// input, a mathematical validation failure of otherwise well-formed input,
/// or a broken internal invariant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid perversity at index {index}: {reason}")]
    InvalidPerversity { index: usize, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("simplex {0} is not in the complex")]
    NotInComplex(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by bad user input rather than by the math.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::InvalidArgument(_)
                | Error::InvalidDimension(_)
                | Error::InvalidPerversity { .. }
                | Error::BoundExceeded(_)
        )
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
