//! File formats, run manifests and pipeline drivers for `lexiphy`.
//!
//! The algorithms live in [`lexiphy_core`]; this crate reads and writes the
//! tab-separated wordlists, sound-class and scoring tables, character
//! matrices, Newick trees and trace files, and wires the stages together for
//! the command line.

pub mod cli;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod pipeline;

pub use error::Error;
pub use lexiphy_core as core;
