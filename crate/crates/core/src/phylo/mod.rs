//! Trees, Newick text, binary character matrices, the two-state
//! substitution model and the pruning likelihood.

mod count;
mod leafset;
mod likelihood;
mod matrix;
mod model;
mod newick;
mod tree;

pub use count::topology_count;
pub use leafset::LeafSet;
pub use likelihood::{pruning_loglik, PatternData};
pub use matrix::{build_matrix, CharacterMatrix, MatrixOptions};
pub use model::{transition_matrix, SubstParams};
pub use newick::{emit_newick, parse_newick, NewickError};
pub use tree::{Node, PhyloTree};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PhyloError {
    #[error("tree leaves do not match matrix languages: {0}")]
    LabelMismatch(String),
    #[error(transparent)]
    Newick(#[from] NewickError),
    #[error("node {0} is not binary")]
    NotBinary(usize),
    #[error("branch above node {0} has non-positive or missing length")]
    BadBranchLength(usize),
    #[error("duplicate leaf label {0:?}")]
    DuplicateLabel(String),
    #[error("leaf {0} has no label")]
    UnlabeledLeaf(usize),
    #[error("need at least {need} leaves, got {got}")]
    TooFewLeaves { need: usize, got: usize },
    #[error("malformed tree: {0}")]
    Malformed(&'static str),
    #[error("character matrix: {0}")]
    Matrix(String),
    #[error("invalid substitution parameters: pi1={pi1}, mu={mu}")]
    InvalidParams { pi1: f64, mu: f64 },
}
