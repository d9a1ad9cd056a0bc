use thiserror::Error;

use crate::tableau::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed shape: {0}")]
    Malformed(String),
    #[error("invalid tableau: {0}")]
    Invalid(Violation),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size {size} exceeds the configured limit {limit}")]
    LimitExceeded { size: usize, limit: usize },
    /// An internal consistency check failed. Always a bug.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure_internal {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::Error::Internal(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_internal;
