use alloc::string::String;

/// Errors produced by group computations.
///
/// `Limit` is a budget refusal: the computation was not attempted (or was
/// abandoned) because a configured size limit would be exceeded. Callers
/// treat it differently from genuine input errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree must be positive")]
    EmptyDegree,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{what} limit exceeded ({needed} > {limit})")]
    Limit {
        what: &'static str,
        needed: String,
        limit: String,
    },
    #[error("not a subgroup of the parent group")]
    NotSubgroup,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Budget refusal naming the exceeded limit.
    pub fn limit(
        what: &'static str,
        needed: impl core::fmt::Display,
        limit: impl core::fmt::Display,
    ) -> Self {
        use alloc::string::ToString;
        Error::Limit {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }

    /// True for budget refusals.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::Limit { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
