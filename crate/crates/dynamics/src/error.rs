use bisetkit_algebra::AlgebraError;
use bisetkit_bisets::BisetError;
use bisetkit_gob::GobError;
use bisetkit_graphs::GraphError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Biset(#[from] BisetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gob(#[from] GobError),
    #[error("invalid bundle:\n{0}")]
    InvalidBundle(String),
    #[error("invalid graph of bisets:\n{0}")]
    InvalidGob(String),
    #[error("peripheral data: {0}")]
    Peripheral(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
