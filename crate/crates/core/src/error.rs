use thiserror::Error;

/// Errors raised across the crate.
///
/// `InvalidInput` and `Unsupported` describe bad requests; the remaining
/// variants mean an internal invariant failed and the result must not be
/// trusted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("tensor is not a Lie element (residual word {0})")]
    NotLieElement(String),
    #[error("Weyl extraction failed: {0}")]
    Extraction(String),
}

impl Error {
    /// Whether the error was caused by the caller's input rather than by a
    /// failed invariant.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidInput(_) | Error::Unsupported(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
