//! Per-concept cognate clustering.
//!
//! Three distance-based detectors (consonant-class matching, normalized edit
//! distance, sound-class alignment) share UPGMA flat clustering. BipSkip
//! links words to their sound-class skip-grams, projects that bipartite
//! network onto the words, and partitions the word graph.

mod bipskip;
mod detect;
mod distance;
mod graph;
mod partition;
mod upgma;

pub use bipskip::{bipskip_concept, bipskip_detect, skip_grams, BipSkipParams, BipartiteNet};
pub use detect::{
    concept_seed, detect, detect_concept, merge_concept_labels, Method, MethodParams, CCM_THRESHOLD, EDIT_THRESHOLD,
    SCA_THRESHOLD,
};
pub use distance::{ccm_distance, pairwise_matrix, DistanceMatrix, Metric};
pub use graph::{partition_components, partition_labelprop, Partitioner, WordGraph};
pub use partition::CognatePartition;
pub use upgma::{upgma_flat_cluster, upgma_labels};

use alloc::string::String;

use crate::align::AlignError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CognateError {
    #[error("forms {a} and {b} belong to different concepts")]
    ConceptMismatch { a: u64, b: u64 },
    #[error("no forms to cluster")]
    Empty,
    #[error("threshold {0} outside (0, 1]")]
    BadThreshold(f64),
    #[error("pruning fraction {0} outside [0, 1)")]
    BadPrune(f64),
    #[error("skip-gram length must be at least 2")]
    BadGramLength,
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
    #[error(transparent)]
    Align(#[from] AlignError),
}
