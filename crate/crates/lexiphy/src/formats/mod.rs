//! Tab-separated tables, Newick files and trace CSV.

mod matrix;
mod partition;
mod scoring;
mod sound;
mod table;
mod trace;
mod tree;
mod wordlist;

pub use matrix::{matrix_to_string, parse_matrix, read_matrix, write_matrix};
pub use partition::{partition_from_table, read_partition};
pub use scoring::read_scoring;
pub use sound::read_sound_model;
pub use table::Table;
pub use trace::{trace_to_csv, write_trace};
pub use tree::{read_tree, write_tree};
pub use wordlist::{load_wordlist, parse_wordlist, wordlist_to_string, write_with_predictions};

use std::path::Path;

use crate::error::{Error, Result};

/// Write text to `path`, mapping errors to [`Error::Io`].
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}
