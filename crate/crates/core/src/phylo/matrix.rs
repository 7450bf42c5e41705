use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::PhyloError;
use crate::cognate::CognatePartition;
use crate::ingest::Wordlist;

/// Binary presence/absence matrix: languages (rows) by cognate sets
/// (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterMatrix {
    languages: Vec<String>,
    columns: Vec<String>,
    /// Row-major, `languages.len() * columns.len()` cells.
    cells: Vec<u8>,
}

impl CharacterMatrix {
    /// Build from rows of 0/1 cells.
    pub fn from_rows(languages: Vec<String>, columns: Vec<String>, rows: &[Vec<u8>]) -> Result<Self, PhyloError> {
        if rows.len() != languages.len() {
            return Err(PhyloError::Matrix(format!(
                "{} rows for {} languages",
                rows.len(),
                languages.len()
            )));
        }
        let mut sorted = languages.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != languages.len() {
            return Err(PhyloError::Matrix("duplicate language".into()));
        }
        let mut cells = Vec::with_capacity(languages.len() * columns.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(PhyloError::Matrix(format!("row {r} has {} cells", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&c| c > 1) {
                return Err(PhyloError::Matrix(format!("row {r}: cell value {bad}")));
            }
            cells.extend_from_slice(row);
        }
        Ok(Self {
            languages,
            columns,
            cells,
        })
    }

    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn n_languages(&self) -> usize {
        self.languages.len()
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.columns.len() + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        let k = self.columns.len();
        &self.cells[row * k..(row + 1) * k]
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.languages.len()).map(|r| self.get(r, col)).collect()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.columns.len())
            .map(|c| (0..self.languages.len()).map(|r| self.get(r, c) as usize).sum())
            .collect()
    }

    /// Fraction of 1 cells.
    pub fn mean(&self) -> f64 {
        if self.cells.is_empty() {
            return 0.0;
        }
        self.cells.iter().map(|&c| c as usize).sum::<usize>() as f64 / self.cells.len() as f64
    }

    /// Keep only columns for which `keep(column sum)` holds.
    pub fn retain_columns<F: Fn(usize) -> bool>(&self, keep: F) -> Self {
        let sums = self.column_sums();
        let kept: Vec<usize> = (0..self.columns.len()).filter(|&c| keep(sums[c])).collect();
        let rows: Vec<Vec<u8>> = (0..self.languages.len())
            .map(|r| kept.iter().map(|&c| self.get(r, c)).collect())
            .collect();
        Self {
            languages: self.languages.clone(),
            columns: kept.iter().map(|&c| self.columns[c].clone()).collect(),
            cells: rows.concat(),
        }
    }

    /// Drop columns in which no language is present.
    pub fn drop_absent_columns(&self) -> Self {
        self.retain_columns(|s| s > 0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatrixOptions {
    /// Drop columns present in every language.
    pub drop_all_present: bool,
}

/// One column per cluster; a cell is 1 when the language has at least one
/// form in that cluster. Columns are ordered by cluster id and named by it.
pub fn build_matrix(
    partition: &CognatePartition,
    wordlist: &Wordlist,
    options: MatrixOptions,
) -> Result<CharacterMatrix, PhyloError> {
    if wordlist.is_empty() {
        return Err(PhyloError::Matrix("empty wordlist".into()));
    }
    let languages = wordlist.languages().to_vec();
    let lang_index: BTreeMap<&str, usize> = languages.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let clusters = partition.clusters();
    let mut rows = vec![vec![0u8; clusters.len()]; languages.len()];
    let mut columns = Vec::with_capacity(clusters.len());
    for (col, (cid, members)) in clusters.iter().enumerate() {
        columns.push(format!("{cid}"));
        for &id in members {
            let form = wordlist
                .get(id)
                .ok_or_else(|| PhyloError::Matrix(format!("form {id} not in wordlist")))?;
            rows[lang_index[form.doculect.as_str()]][col] = 1;
        }
    }
    for f in wordlist.forms() {
        if partition.get(f.id).is_none() {
            return Err(PhyloError::Matrix(format!("form {} has no cluster", f.id)));
        }
    }
    let m = CharacterMatrix::from_rows(languages, columns, &rows)?;
    let n = m.n_languages();
    Ok(if options.drop_all_present {
        m.retain_columns(|s| s > 0 && s < n)
    } else {
        m.drop_absent_columns()
    })
}
