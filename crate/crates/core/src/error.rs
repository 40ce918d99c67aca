use alloc::string::String;

/// Errors raised by the exact constructions.
///
/// Verification outcomes are not errors; they are returned as [`crate::Report`]s.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("induced dimension {nu} exceeds the configured limit {limit}")]
    Capacity { nu: String, limit: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular")]
    Singular,

    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("invalid weights: {0}")]
    Weights(String),

    #[error("A*pA is not diagonal: entry ({row},{col}) is nonzero")]
    NotOrthogonal { row: usize, col: usize },

    #[error("invalid system: {0}")]
    System(String),

    #[error("reflection vector is zero")]
    ZeroVector,

    #[error("first column of the reflection has a zero at row {row}")]
    ZeroPivot { row: usize },

    #[error("invalid scale: {0}")]
    Scale(String),

    #[error("identity failed: {0}")]
    Identity(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
