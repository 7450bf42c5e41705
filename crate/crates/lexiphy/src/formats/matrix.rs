use std::path::Path;

use lexiphy_core::phylo::CharacterMatrix;

use super::Table;
use crate::error::{Error, Result};

/// First header cell of a matrix file.
const CORNER: &str = "LANGUAGE";

pub fn matrix_to_string(m: &CharacterMatrix) -> String {
    let mut out = String::from(CORNER);
    for c in m.columns() {
        out.push('\t');
        out.push_str(c);
    }
    out.push('\n');
    for (r, lang) in m.languages().iter().enumerate() {
        out.push_str(lang);
        for &cell in m.row(r) {
            out.push('\t');
            out.push(if cell == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix(path: &Path, m: &CharacterMatrix) -> Result<()> {
    super::write_text(path, &matrix_to_string(m))
}

/// Parse a matrix table: first column language, remaining header cells are
/// cognate-set ids, cells are `0` or `1`.
pub fn parse_matrix(table: &Table) -> Result<CharacterMatrix> {
    let columns: Vec<String> = table.header.iter().skip(1).cloned().collect();
    let mut languages = Vec::with_capacity(table.rows.len());
    let mut rows = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        languages.push(row[0].trim().to_string());
        let cells = row[1..]
            .iter()
            .enumerate()
            .map(|(k, v)| match v.trim() {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                other => Err(Error::BadField {
                    path: table.path.clone(),
                    row: *line,
                    column: columns[k].clone(),
                    value: other.into(),
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        rows.push(cells);
    }
    Ok(CharacterMatrix::from_rows(languages, columns, &rows)?)
}

pub fn read_matrix(path: &Path) -> Result<CharacterMatrix> {
    parse_matrix(&Table::read(path)?)
}
