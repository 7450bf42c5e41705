//! Wordlist ingestion: IPA tokenization and sound-class mapping.

mod sound;
mod tokenize;
mod wordlist;

pub use sound::{consonant_skeleton, SoundClassModel, DEFAULT_CLASS, VOWEL};
pub use tokenize::{is_diacritic, tokenize_ipa};
pub use wordlist::{WordForm, Wordlist};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("form has no segments")]
    EmptyForm,
    #[error("duplicate form id {id} (row {row})")]
    DuplicateId { id: u64, row: usize },
    #[error("form {id}: class string length differs from token count")]
    ClassLengthMismatch { id: u64 },
    #[error("invalid sound-class model: {0}")]
    InvalidModel(String),
}
