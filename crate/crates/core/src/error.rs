use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// `order` is the number of elements found when the cap was passed.
    #[error("group order exceeds the cap {cap} (at least {order} elements)")]
    CapExceeded { order: usize, cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("{divisor} does not divide {value}")]
    NotDivisible { divisor: u64, value: u64 },

    #[error("ghost ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid biset: {0}")]
    InvalidBiset(String),

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    /// A computation produced something a theorem rules out. Never silently
    /// tolerated: it means a bug or a violated assumption.
    #[error("theory violation: {0}")]
    TheoryViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
