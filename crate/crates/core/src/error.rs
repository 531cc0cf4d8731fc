use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not full rank")]
    NotFullRank,

    #[error("not a sublattice")]
    NotSublattice,

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: u128, p: u32 },

    #[error("malformed matrix file: {0}")]
    Format(String),

    #[error("level {level}: {source}")]
    AtLevel { level: usize, source: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_budget(&self) -> bool {
        match self {
            Error::BudgetExceeded { .. } => true,
            Error::AtLevel { source, .. } => source.is_budget(),
            _ => false,
        }
    }
}
