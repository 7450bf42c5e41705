use std::path::Path;

use lexiphy_core::phylo::{emit_newick, parse_newick, PhyloTree};

use crate::error::Result;

pub fn read_tree(path: &Path) -> Result<PhyloTree> {
    let text = super::read_text(path)?;
    Ok(parse_newick(text.trim())?)
}

/// Write one tree followed by a newline; internal labels are supports when
/// `supports` is set.
pub fn write_tree(path: &Path, tree: &PhyloTree, supports: bool) -> Result<()> {
    let mut text = emit_newick(tree, supports);
    text.push('\n');
    super::write_text(path, &text)
}
