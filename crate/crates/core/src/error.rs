use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid split ({p}, {q}) of power {k}")]
    InvalidSplit { k: usize, p: usize, q: usize },
    #[error("spanning matrix is rank deficient: rank {rank} < {cols} columns")]
    RankDeficient { rank: usize, cols: usize },
    #[error("wrong space: {0}")]
    WrongSpace(String),
    #[error("inhomogeneous entry: {0}")]
    Inhomogeneous(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("containment fails in degree {degree}: {detail}")]
    Containment { degree: usize, detail: String },
    #[error("block in degree {degree} is not invertible (rank {rank} of {size})")]
    NotInvertible { degree: usize, rank: usize, size: usize },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("no isomorphism found after {0} seeds (inconclusive)")]
    Inconclusive(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
