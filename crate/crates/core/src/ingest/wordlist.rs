use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{tokenize_ipa, IngestError, SoundClassModel};

/// One word in one language for one concept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordForm {
    pub id: u64,
    pub doculect: String,
    pub concept: String,
    pub tokens: Vec<String>,
    /// One class label per token.
    pub classes: String,
    pub gold_cogid: Option<u64>,
}

impl WordForm {
    /// Tokenize and classify a raw transcription.
    pub fn new(
        id: u64,
        doculect: &str,
        concept: &str,
        ipa: &str,
        gold_cogid: Option<u64>,
        model: &SoundClassModel,
    ) -> Result<Self, IngestError> {
        let tokens = tokenize_ipa(ipa)?;
        Ok(Self::from_tokens(id, doculect, concept, tokens, gold_cogid, model))
    }

    pub fn from_tokens(
        id: u64,
        doculect: &str,
        concept: &str,
        tokens: Vec<String>,
        gold_cogid: Option<u64>,
        model: &SoundClassModel,
    ) -> Self {
        let classes = model.classify(&tokens);
        Self {
            id,
            doculect: doculect.into(),
            concept: concept.into(),
            tokens,
            classes,
            gold_cogid,
        }
    }

    /// Space-joined tokens.
    pub fn ipa(&self) -> String {
        self.tokens.join(" ")
    }
}

/// A validated collection of word forms indexed by concept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wordlist {
    forms: Vec<WordForm>,
    by_id: BTreeMap<u64, usize>,
    index: BTreeMap<String, Vec<u64>>,
    languages: Vec<String>,
}

impl Wordlist {
    /// Build a wordlist, keeping forms in input order.
    pub fn new(forms: Vec<WordForm>) -> Result<Self, IngestError> {
        let mut by_id = BTreeMap::new();
        let mut index: BTreeMap<String, Vec<u64>> = BTreeMap::new();
        let mut languages = BTreeSet::new();
        for (pos, form) in forms.iter().enumerate() {
            if form.tokens.is_empty() {
                return Err(IngestError::EmptyForm);
            }
            if form.tokens.len() != form.classes.chars().count() {
                return Err(IngestError::ClassLengthMismatch { id: form.id });
            }
            if by_id.insert(form.id, pos).is_some() {
                return Err(IngestError::DuplicateId {
                    id: form.id,
                    row: pos + 1,
                });
            }
            index.entry(form.concept.clone()).or_default().push(form.id);
            languages.insert(form.doculect.clone());
        }
        for ids in index.values_mut() {
            ids.sort_unstable();
        }
        Ok(Self {
            forms,
            by_id,
            index,
            languages: languages.into_iter().collect(),
        })
    }

    pub fn forms(&self) -> &[WordForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn get(&self, id: u64) -> Option<&WordForm> {
        self.by_id.get(&id).map(|&i| &self.forms[i])
    }

    /// Sorted, deduplicated doculect names.
    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    /// Concepts in sorted order.
    pub fn concepts(&self) -> impl Iterator<Item = &str> {
        self.index.keys().map(String::as_str)
    }

    /// Form ids of one concept, ascending.
    pub fn concept_ids(&self, concept: &str) -> &[u64] {
        self.index.get(concept).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Forms of one concept, ordered by id.
    pub fn concept_forms(&self, concept: &str) -> Vec<&WordForm> {
        self.concept_ids(concept)
            .iter()
            .filter_map(|&id| self.get(id))
            .collect()
    }

    /// `(concept, forms)` slices in concept order.
    pub fn slices(&self) -> impl Iterator<Item = (&str, Vec<&WordForm>)> {
        self.index
            .iter()
            .map(move |(c, ids)| (c.as_str(), ids.iter().filter_map(|&id| self.get(id)).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn form(id: u64, lang: &str, concept: &str, ipa: &str) -> WordForm {
        WordForm::new(id, lang, concept, ipa, None, &SoundClassModel::builtin()).unwrap()
    }

    #[test]
    fn index_and_languages() {
        let wl = Wordlist::new(vec![
            form(3, "German", "hand", "h a n t"),
            form(1, "English", "hand", "h æ n d"),
            form(2, "English", "night", "n a i t"),
        ])
        .unwrap();
        assert_eq!(wl.languages(), ["English", "German"]);
        assert_eq!(wl.concept_ids("hand"), [1, 3]);
        assert_eq!(wl.concepts().collect::<Vec<_>>(), ["hand", "night"]);
        assert_eq!(wl.get(3).unwrap().classes, "HVNT");
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let err = Wordlist::new(vec![form(7, "A", "x", "t a"), form(7, "B", "x", "t a")]);
        assert_eq!(err, Err(IngestError::DuplicateId { id: 7, row: 2 }));
    }
}
