//! Cognate detection and Bayesian tree inference over multilingual wordlists.
//!
//! The crate is `no_std` (with `alloc`) and holds every algorithm of the
//! pipeline:
//!
//! * [`ingest`]: IPA tokenization and sound-class mapping.
//! * [`align`]: edit distance and sound-class alignment scores.
//! * [`cognate`]: per-concept clustering (CCM, edit distance, SCA, BipSkip).
//! * [`phylo`]: trees, Newick text, binary character matrices and the
//!   pruning likelihood under a two-state model.
//! * [`mcmc`]: annealed Metropolis-Hastings over trees and model parameters.
//! * [`eval`]: B-Cubed scores and generalized quartet distance.
//! * [`sim`]: forward simulation of trees and character matrices.
//!
//! File formats, IO and the command line live in the `lexiphy` crate.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod align;
pub mod cognate;
pub mod eval;
pub mod ingest;
pub mod math;
pub mod mcmc;
pub mod phylo;
pub mod sim;

pub use align::ScoringScheme;
pub use cognate::{CognatePartition, DistanceMatrix, Method};
pub use eval::{BcubedScore, QuartetReport};
pub use ingest::{SoundClassModel, WordForm, Wordlist};
pub use mcmc::{ChainConfig, ChainResult, McmcState};
pub use phylo::{CharacterMatrix, PhyloTree, SubstParams};
pub use sim::SimConfig;
