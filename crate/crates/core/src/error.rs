use thiserror::Error;

/// Errors produced by subgroup computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet rank {0}")]
    InvalidRank(usize),
    #[error("generator {generator} is outside an alphabet of rank {rank}")]
    LetterOutOfRange { generator: usize, rank: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("word {0} is not in the subgroup")]
    NotMember(String),
    #[error("first subgroup is not contained in the second")]
    NotSubgroup,
    #[error("the empty word is not allowed here")]
    EmptyWord,
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("invalid vertex partition: {0}")]
    InvalidPartition(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
