use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },

    #[error("{0} is not a unit")]
    NotUnit(String),

    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("{0} and {1} are not associates")]
    NotAssociates(String, String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("ring {0} is infinite")]
    InfiniteRing(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed ring descriptor {input:?}: {reason}")]
    Descriptor { input: String, reason: String },

    #[error("parse error at {position}: {reason}")]
    Parse { position: usize, reason: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn not_divisible(dividend: impl std::fmt::Debug, divisor: impl std::fmt::Debug) -> Self {
        Error::NotDivisible {
            dividend: format!("{dividend:?}"),
            divisor: format!("{divisor:?}"),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Parse and descriptor failures, as opposed to mathematical ones.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Descriptor { .. })
    }
}
