use bisetkit_algebra::AlgebraError;
use bisetkit_bisets::BisetError;
use bisetkit_graphs::GraphError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GobError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Biset(#[from] BisetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid graph of bisets: {0}")]
    Invalid(String),
    #[error("not left-fibrant at `{vertex}` over `{edge}`: {reason}")]
    NotFibrant { vertex: String, edge: String, reason: String },
    #[error("rho is not simplicial at `{0}`")]
    NotSimplicial(String),
    #[error("graphs of groups do not match: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
