//! Annealed Metropolis-Hastings over tree topology, branch lengths and
//! substitution parameters.
//!
//! The acceptance test divides the log-posterior difference by the current
//! temperature. Temperature starts at `t0` and cools geometrically to 1,
//! after which the chain is a plain Metropolis-Hastings sampler and its
//! samples feed the consensus tree.

mod chain;
mod consensus;
mod moves;
mod prior;

pub use chain::{
    metropolis_accept, mh_step, run_chain, temperature_schedule, ChainConfig, ChainResult, McmcState, MoveWeights,
    Trace, TraceRecord,
};
pub use consensus::majority_consensus;
pub use moves::{apply_param_step, propose_nni, propose_params, propose_scale_branch, reflect, scale_branch};
pub use prior::log_prior;

use crate::phylo::PhyloError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum McmcError {
    #[error("tree has no internal edge")]
    NoInternalEdge,
    #[error("need at least 3 languages, got {0}")]
    TooFewLanguages(usize),
    #[error("invalid chain configuration: {0}")]
    BadConfig(&'static str),
    #[error("log-posterior is not a number")]
    NotANumber,
    #[error(transparent)]
    Phylo(#[from] PhyloError),
}
