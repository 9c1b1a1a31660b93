use alloc::string::String;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("no convergence after {terms} terms")]
    Convergence { terms: usize },
    #[error("singular system: {0}")]
    Solve(String),
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = core::result::Result<T, QError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(QError::Domain(msg.into()))
}

pub(crate) fn pole<T>(msg: impl Into<String>) -> Result<T> {
    Err(QError::Pole(msg.into()))
}
