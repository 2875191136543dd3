use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("factor index {index} out of range (group has {rank} factors)")]
    UnknownFactor { index: usize, rank: usize },
    #[error("duplicate factor name `{0}`")]
    DuplicateName(String),
    #[error("invalid factor name `{0}`")]
    BadName(String),
    #[error("invalid order `{0}`")]
    BadOrder(String),
    #[error("is_power_of needs a nontrivial base word")]
    TrivialBase,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}
