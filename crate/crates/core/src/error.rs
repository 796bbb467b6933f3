use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("l = {l} needs norms up to {needed}, but the sieve only covers {limit}")]
    SieveLimit { l: f64, needed: u64, limit: u64 },

    #[error("cannot allocate a sieve with limit {limit}")]
    Allocation { limit: u64 },

    #[error("node budget {budget} exhausted after visiting {visited} nodes")]
    BudgetExceeded { budget: u64, visited: u64 },

    #[error("output capacity {cap} exceeded")]
    CapacityExceeded { cap: usize },

    #[error("no monotone edge path from {start:?} to {end:?}")]
    NoMonotonePath { start: [i64; 4], end: [i64; 4] },

    #[error("malformed sieve file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
