use std::collections::BTreeMap;
use std::path::Path;

use lexiphy_core::cognate::CognatePartition;

use super::Table;
use crate::error::{Error, Result};

/// Cluster assignment from the `ID`, `CONCEPT` and `column` columns of a
/// table. Clusters are keyed by `(concept, value)`, so a reused id in two
/// concepts yields two clusters.
pub fn partition_from_table(table: &Table, column: &str) -> Result<CognatePartition> {
    let id_col = table.require("ID")?;
    let concept_col = table.require("CONCEPT")?;
    let cog_col = table.require(column)?;
    let mut keys: BTreeMap<(String, u64), u64> = BTreeMap::new();
    let mut partition = CognatePartition::new();
    for (line, row) in &table.rows {
        let bad = |col: &str, value: &str| Error::BadField {
            path: table.path.clone(),
            row: *line,
            column: col.into(),
            value: value.into(),
        };
        let id: u64 = row[id_col].trim().parse().map_err(|_| bad("ID", &row[id_col]))?;
        let cog: u64 = row[cog_col].trim().parse().map_err(|_| bad(column, &row[cog_col]))?;
        let next = keys.len() as u64 + 1;
        let cluster = *keys.entry((row[concept_col].trim().to_string(), cog)).or_insert(next);
        partition.insert(id, cluster);
    }
    Ok(partition)
}

pub fn read_partition(path: &Path, column: &str) -> Result<CognatePartition> {
    partition_from_table(&Table::read(path)?, column)
}
