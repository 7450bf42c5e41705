use std::collections::BTreeMap;
use std::path::Path;

use lexiphy_core::cognate::CognatePartition;
use lexiphy_core::ingest::{IngestError, SoundClassModel, WordForm, Wordlist};

use super::Table;
use crate::error::{Error, Result};

/// Read a wordlist TSV with columns `ID`, `DOCULECT`, `CONCEPT`, `IPA` and
/// optionally `COGID`. Every form is tokenized and classified with `model`.
pub fn load_wordlist(path: &Path, model: &SoundClassModel) -> Result<Wordlist> {
    let table = Table::read(path)?;
    parse_wordlist(&table, model)
}

fn parse_id(table: &Table, row: usize, column: &str, value: &str) -> Result<u64> {
    value.trim().parse::<u64>().map_err(|_| Error::BadField {
        path: table.path.clone(),
        row,
        column: column.into(),
        value: value.into(),
    })
}

pub fn parse_wordlist(table: &Table, model: &SoundClassModel) -> Result<Wordlist> {
    let id_col = table.require("ID")?;
    let lang_col = table.require("DOCULECT")?;
    let concept_col = table.require("CONCEPT")?;
    let ipa_col = table.require("IPA")?;
    let cog_col = table.column("COGID");

    let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
    let mut forms = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        let id = parse_id(table, *line, "ID", &row[id_col])?;
        if seen.insert(id, *line).is_some() {
            return Err(Error::DuplicateId {
                path: table.path.clone(),
                row: *line,
                id,
            });
        }
        let gold = match cog_col.map(|c| row[c].trim()) {
            None | Some("") => None,
            Some(v) => {
                let cog = parse_id(table, *line, "COGID", v)?;
                if cog == 0 {
                    return Err(Error::BadField {
                        path: table.path.clone(),
                        row: *line,
                        column: "COGID".into(),
                        value: v.into(),
                    });
                }
                Some(cog)
            }
        };
        let form = WordForm::new(
            id,
            row[lang_col].trim(),
            row[concept_col].trim(),
            &row[ipa_col],
            gold,
            model,
        )
        .map_err(|e| match e {
            IngestError::EmptyForm => Error::EmptyForm {
                path: table.path.clone(),
                row: *line,
            },
            other => Error::Ingest(other),
        })?;
        forms.push(form);
    }
    Ok(Wordlist::new(forms)?)
}

/// Canonical TSV for a wordlist; `IPA` is written space-segmented.
pub fn wordlist_to_string(wordlist: &Wordlist) -> String {
    let with_cog = wordlist.forms().iter().any(|f| f.gold_cogid.is_some());
    let mut out = String::from("ID\tDOCULECT\tCONCEPT\tIPA");
    if with_cog {
        out.push_str("\tCOGID");
    }
    out.push('\n');
    for f in wordlist.forms() {
        out.push_str(&format!("{}\t{}\t{}\t{}", f.id, f.doculect, f.concept, f.ipa()));
        if with_cog {
            out.push('\t');
            if let Some(c) = f.gold_cogid {
                out.push_str(&c.to_string());
            }
        }
        out.push('\n');
    }
    out
}

/// The input table with a `PREDCOGID` column appended (or replaced).
pub fn write_with_predictions(table: &Table, partition: &CognatePartition) -> Result<String> {
    let id_col = table.require("ID")?;
    let mut out = table.clone();
    let pred_col = match out.column("PREDCOGID") {
        Some(c) => c,
        None => {
            out.header.push("PREDCOGID".into());
            for (_, row) in out.rows.iter_mut() {
                row.push(String::new());
            }
            out.header.len() - 1
        }
    };
    for (line, row) in out.rows.iter_mut() {
        let id = parse_id(table, *line, "ID", &row[id_col])?;
        let cluster = partition.get(id).ok_or_else(|| Error::Format {
            path: table.path.clone(),
            message: format!("row {line}: form {id} has no predicted cluster"),
        })?;
        row[pred_col] = cluster.to_string();
    }
    Ok(out.to_tsv())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Wordlist> {
        let t = Table::parse(Path::new("w.tsv"), text)?;
        parse_wordlist(&t, &SoundClassModel::builtin())
    }

    #[test]
    fn three_rows() {
        let wl =
            parse("ID\tDOCULECT\tCONCEPT\tIPA\tCOGID\n1\tA\thand\tt a k\t1\n2\tB\thand\ttʰak\t1\n3\tA\tfoot\tp e\t2\n")
                .unwrap();
        assert_eq!(wl.len(), 3);
        assert_eq!(wl.get(2).unwrap().tokens, ["tʰ", "a", "k"]);
        assert_eq!(wl.get(3).unwrap().gold_cogid, Some(2));
    }

    #[test]
    fn missing_concept_column() {
        let e = parse("ID\tDOCULECT\tIPA\n1\tA\tt a\n").unwrap_err();
        assert!(matches!(e, Error::MissingColumn { ref column, .. } if column == "CONCEPT"));
    }

    #[test]
    fn duplicate_id_reports_row() {
        let e = parse("ID\tDOCULECT\tCONCEPT\tIPA\n7\tA\tx\tt a\n7\tB\tx\tt a\n").unwrap_err();
        assert!(matches!(e, Error::DuplicateId { row: 3, id: 7, .. }), "{e}");
    }

    #[test]
    fn empty_form_reports_row() {
        let e = parse("ID\tDOCULECT\tCONCEPT\tIPA\n1\tA\tx\tt a\n2\tB\tx\t \n").unwrap_err();
        assert!(matches!(e, Error::EmptyForm { row: 3, .. }), "{e}");
    }

    #[test]
    fn bad_id() {
        let e = parse("ID\tDOCULECT\tCONCEPT\tIPA\nx1\tA\tx\tt a\n").unwrap_err();
        assert!(matches!(e, Error::BadField { row: 2, .. }), "{e}");
    }

    #[test]
    fn predictions_are_appended() {
        let t = Table::parse(
            Path::new("w.tsv"),
            "ID\tDOCULECT\tCONCEPT\tIPA\n1\tA\tx\tt a\n2\tB\tx\tt a\n",
        )
        .unwrap();
        let p = CognatePartition::from_pairs([(1, 4), (2, 4)]);
        assert_eq!(
            write_with_predictions(&t, &p).unwrap(),
            "ID\tDOCULECT\tCONCEPT\tIPA\tPREDCOGID\n1\tA\tx\tt a\t4\n2\tB\tx\tt a\t4\n"
        );
    }
}
