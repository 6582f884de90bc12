//! Error type shared by every layer of the library.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("malformed span or cospan: {0}")]
    MalformedDiagram(String),
    #[error("budget exhausted during {0}")]
    BudgetExhausted(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("truncation too shallow: {0}")]
    TruncationTooShallow(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
