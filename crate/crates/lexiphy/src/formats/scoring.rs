use std::path::Path;

use lexiphy_core::align::ScoringScheme;

use super::Table;
use crate::error::{Error, Result};

/// Read `CLASS_A<TAB>CLASS_B<TAB>SCORE` rows on top of the default scheme.
pub fn read_scoring(path: &Path) -> Result<ScoringScheme> {
    let table = Table::read(path)?;
    let a = table.require("CLASS_A")?;
    let b = table.require("CLASS_B")?;
    let s = table.require("SCORE")?;
    let mut scheme = ScoringScheme::default();
    for (line, row) in &table.rows {
        let bad = |column: &str, value: &str| Error::BadField {
            path: path.to_path_buf(),
            row: *line,
            column: column.into(),
            value: value.into(),
        };
        let single = |column: &str, value: &str| {
            let mut it = value.trim().chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(bad(column, value)),
            }
        };
        let ca = single("CLASS_A", &row[a])?;
        let cb = single("CLASS_B", &row[b])?;
        let score: f64 = row[s].trim().parse().map_err(|_| bad("SCORE", &row[s]))?;
        if !score.is_finite() {
            return Err(bad("SCORE", &row[s]));
        }
        scheme.set_pair(ca, cb, score);
    }
    Ok(scheme)
}
