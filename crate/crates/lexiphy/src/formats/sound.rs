use std::path::Path;

use lexiphy_core::ingest::SoundClassModel;

use super::Table;
use crate::error::{Error, Result};

/// Read a `TOKEN<TAB>CLASS` table into a sound-class model.
pub fn read_sound_model(path: &Path) -> Result<SoundClassModel> {
    let table = Table::read(path)?;
    let tok = table.require("TOKEN")?;
    let cls = table.require("CLASS")?;
    let mut entries = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        let mut chars = row[cls].trim().chars();
        let class = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => {
                return Err(Error::BadField {
                    path: path.to_path_buf(),
                    row: *line,
                    column: "CLASS".into(),
                    value: row[cls].clone(),
                })
            }
        };
        entries.push((row[tok].trim().to_string(), class));
    }
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("custom");
    Ok(SoundClassModel::new(name, entries)?)
}
