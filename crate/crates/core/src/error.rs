//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("item index {item} out of range for {items} items")]
    ItemOutOfRange { item: usize, items: usize },

    #[error("bidder index {bidder} out of range for {bidders} bidders")]
    BidderOutOfRange { bidder: usize, bidders: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("negative bid at bidder {bidder}, item {item}")]
    NegativeBid { bidder: usize, item: usize },

    #[error("invalid valuation: {0}")]
    InvalidValuation(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("optimal welfare is zero; ratio undefined")]
    OptIsZero,

    #[error("empty maximizer list")]
    EmptyMaximizers,

    #[error("allocation is not a partition of the items: {0}")]
    NotAPartition(String),

    #[error("operation unsupported for this valuation kind: {0}")]
    UnsupportedKind(String),

    #[error("operation unsupported for this mechanism: {0}")]
    UnsupportedMechanism(String),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
