use thiserror::Error;

use crate::combinatorics::{HalfInt, LambdaPair, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid boundary profile: {0}")]
    InvalidProfile(String),
    #[error("{0} is not a symmetric diagram with an even diagonal")]
    NotSymmetric(Partition),
    #[error("{pair} is not a pair of {lambda}")]
    InvalidMove { lambda: Partition, pair: LambdaPair },
    #[error("diamond completion needs two distinct partitions")]
    DegenerateDiamond,
    #[error("{0}")]
    Domain(String),
    #[error("no parent of {0} inside the materialized window")]
    Window(LambdaPair),
    #[error("phi has the wrong sign at {0}")]
    WrongSign(HalfInt),
    #[error("set is not the tau-set of any 0-1 matrix")]
    ReconstructionMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("rewriting exceeded {0} steps")]
    NonTermination(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
