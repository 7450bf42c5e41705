//! Evaluation metrics: B-Cubed clustering scores and generalized quartet
//! distance between trees.

mod bcubed;
mod quartet;

pub use bcubed::{bcubed, BcubedScore};
pub use quartet::{gqd, quartet_topology, LeafDistances, Quartet, QuartetReport};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("partitions cover different forms: {0}")]
    DomainMismatch(String),
    #[error("trees have different leaf sets")]
    LeafSetMismatch,
    #[error("unknown leaf {0:?}")]
    UnknownLeaf(String),
    #[error("quartet leaves must be distinct")]
    RepeatedLeaf,
    #[error("need at least 4 leaves, got {0}")]
    TooFewLeaves(usize),
}
