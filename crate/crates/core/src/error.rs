use thiserror::Error;

/// Errors raised by every construction in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} out of range: {value} (allowed {min}..={max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    /// A configurable resource cap was hit; nothing is ever truncated silently.
    #[error("{what} exceeds cap: {needed} > {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("alphabet mismatch: {0} letters vs {1} letters")]
    AlphabetMismatch(usize, usize),

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("action pair violates {0}")]
    InvalidAction(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("formula is not first-order: {0}")]
    NotFirstOrder(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn cap(
        what: &'static str,
        needed: impl TryInto<u128>,
        cap: impl TryInto<u128>,
    ) -> Self {
        Error::CapExceeded {
            what,
            needed: needed.try_into().unwrap_or(u128::MAX),
            cap: cap.try_into().unwrap_or(u128::MAX),
        }
    }

    /// True for resource-cap failures (as opposed to invalid input).
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
