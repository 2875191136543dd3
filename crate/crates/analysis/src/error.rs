use bisetkit_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("budget `{name}` exceeded: {requested} requested, limit {limit}")]
    Budget { name: &'static str, limit: u64, requested: u64 },
    #[error("bad budget setting: {0}")]
    BudgetSpec(String),
    #[error("{0}")]
    Precondition(String),
}
