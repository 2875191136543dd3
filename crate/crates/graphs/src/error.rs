use bisetkit_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("duplicate object name `{0}`")]
    DuplicateName(String),
    #[error("`{0}` is not a vertex")]
    NotVertex(String),
    #[error("`{0}` is not an edge")]
    NotEdge(String),
    #[error("inconsistent path: {0}")]
    InconsistentPath(String),
    #[error("graph is disconnected: `{0}` is unreachable from the base")]
    Disconnected(String),
    #[error("not a spanning tree: {0}")]
    NotSpanning(String),
    #[error("edge group: {0}")]
    EdgeGroup(String),
    #[error("morphism: {0}")]
    Morphism(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
