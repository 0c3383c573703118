use thiserror::Error;

/// Errors raised by tree, word, lattice and distance operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TamariError {
    #[error("subtree at address {0} is undefined")]
    UndefinedSubtree(String),

    #[error("index {index} out of range (valid range {min}..={max})")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("malformed Polish word: {0}")]
    MalformedPolish(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// `prefix` is the number of letters that acted successfully before the failure.
    #[error("action undefined at letter {prefix} ({letter})")]
    UndefinedAction { prefix: usize, letter: String },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("trees are not comparable in the Tamari order")]
    NotComparable,

    #[error("capacity guard: size {size} exceeds cap {cap}")]
    CapacityGuard { size: usize, cap: usize },

    #[error("inconsistent covering relation: {0}")]
    InconsistentCovering(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, TamariError>;
