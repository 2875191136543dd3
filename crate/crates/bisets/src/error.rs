use bisetkit_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BisetError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("expected degree {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("biset is not invertible: {0}")]
    NotInvertible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
