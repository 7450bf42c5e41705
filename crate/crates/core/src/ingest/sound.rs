use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

use unicode_normalization::UnicodeNormalization;

use super::tokenize::is_diacritic;
use super::IngestError;

/// Class label shared by every vowel.
pub const VOWEL: char = 'V';
/// Class label for segments the model does not know.
pub const DEFAULT_CLASS: char = '0';

/// IPA vowel letters (base characters, diacritics stripped).
const VOWELS: &str = "aeiouyæɐɑɒɔəɘɚɛɜɝɞɤɨɪɯɵɶʉʊʌʏøœɷᴀᴇ";

/// Built-in coarse consonant classes. Velars, dentals, liquids and nasals
/// follow the classic four groups; the rest extend them so that every common
/// IPA consonant gets a class.
const BUILTIN: &[(char, &str)] = &[
    ('K', "kgxɣqɢχcɟçʝɡɠʛ"),
    ('T', "tdθðʈɖɗ"),
    ('R', "rlʁɾɹɽɻɭʎʀʟɫɬɮʙ"),
    ('N', "nmɱɴɲŋɳ"),
    ('S', "szʃʒɕʑʂʐ"),
    ('P', "pbɓ"),
    ('F', "fvɸβʋ"),
    ('J', "jwɥɰ"),
    ('H', "hɦʔħʕʜʢ"),
];

/// Tone letters and digits used for tone, removed before lookup.
fn is_tone_or_length(c: char) -> bool {
    ('\u{02E5}'..='\u{02E9}').contains(&c)
        || matches!(c, 'ː' | 'ˑ' | '¹' | '²' | '³' | '⁴' | '⁵' | '⁰')
        || c.is_ascii_digit()
}

/// Mapping from IPA segments to single-character sound classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundClassModel {
    name: String,
    mapping: BTreeMap<String, char>,
    default_class: char,
}

impl SoundClassModel {
    /// Build a model from explicit `(token, class)` pairs.
    pub fn new<I, S>(name: &str, entries: I) -> Result<Self, IngestError>
    where
        I: IntoIterator<Item = (S, char)>,
        S: Into<String>,
    {
        let mut mapping = BTreeMap::new();
        for (token, class) in entries {
            let token = token.into();
            if token.is_empty() {
                return Err(IngestError::InvalidModel("empty token".into()));
            }
            if class == DEFAULT_CLASS || class.is_whitespace() || class == '$' {
                return Err(IngestError::InvalidModel(alloc::format!(
                    "reserved class label {class:?} for token {token:?}"
                )));
            }
            mapping.insert(token, class);
        }
        // vowels always map to V, whatever the table says
        for v in VOWELS.chars() {
            mapping.insert(v.to_string(), VOWEL);
        }
        Ok(Self {
            name: name.into(),
            mapping,
            default_class: DEFAULT_CLASS,
        })
    }

    /// The bundled Dolgopolsky-style model.
    pub fn builtin() -> Self {
        let entries = BUILTIN
            .iter()
            .flat_map(|(class, chars)| chars.chars().map(move |c| (c.to_string(), *class)));
        Self::new("builtin", entries).expect("builtin model is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn default_class(&self) -> char {
        self.default_class
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, char)> {
        self.mapping.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Class of a single segment.
    ///
    /// Lookup order: the full token, then the token with tone and length
    /// marks removed, then its base character. Vowels always get `V`.
    pub fn class_of(&self, token: &str) -> char {
        if let Some(&c) = self.mapping.get(token) {
            return c;
        }
        let stripped: String = token.chars().filter(|&c| !is_tone_or_length(c)).collect();
        if let Some(&c) = self.mapping.get(&stripped) {
            return c;
        }
        let base = stripped.nfd().find(|&c| !is_diacritic(c));
        match base {
            Some(b) => {
                let mut buf = [0u8; 4];
                let key: &str = b.encode_utf8(&mut buf);
                if let Some(&c) = self.mapping.get(key) {
                    c
                } else if VOWELS.contains(b) {
                    VOWEL
                } else {
                    self.default_class
                }
            }
            None => self.default_class,
        }
    }

    /// Map every token to its class.
    pub fn classify<S: AsRef<str>>(&self, tokens: &[S]) -> String {
        tokens.iter().map(|t| self.class_of(t.as_ref())).collect()
    }
}

impl Default for SoundClassModel {
    fn default() -> Self {
        Self::builtin()
    }
}

/// First `k` consonant classes of a class string (vowels and unknown
/// segments skipped).
pub fn consonant_skeleton(classes: &str, k: usize) -> String {
    classes
        .chars()
        .filter(|&c| c != VOWEL && c != DEFAULT_CLASS)
        .take(k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn four_consonant_groups() {
        let m = SoundClassModel::builtin();
        assert_eq!(m.classify(&["t", "a", "k"]), "TVK");
        assert_eq!(m.classify(&["r", "l"]), "RR");
        for c in ["k", "g", "x"] {
            assert_eq!(m.class_of(c), 'K');
        }
        for c in ["t", "d", "θ"] {
            assert_eq!(m.class_of(c), 'T');
        }
        for c in ["r", "l", "ʁ"] {
            assert_eq!(m.class_of(c), 'R');
        }
        for c in ["n", "m", "ɱ", "ɴ"] {
            assert_eq!(m.class_of(c), 'N');
        }
    }

    #[test]
    fn unknown_tokens_fall_back() {
        let m = SoundClassModel::builtin();
        assert_eq!(m.classify(&["ʘ"]), "0");
        assert_eq!(m.class_of("˥˩"), DEFAULT_CLASS);
    }

    #[test]
    fn diacritics_tone_and_length_are_ignored() {
        let m = SoundClassModel::builtin();
        assert_eq!(m.class_of("tʰ"), 'T');
        assert_eq!(m.class_of("aː"), 'V');
        assert_eq!(m.class_of("ã"), 'V');
        assert_eq!(m.class_of("a˥"), 'V');
        assert_eq!(m.class_of("t\u{361}s"), 'T');
    }

    #[test]
    fn custom_model_keeps_vowels() {
        let m = SoundClassModel::new("tiny", vec![("a", 'X'), ("p", 'B')]).unwrap();
        assert_eq!(m.class_of("a"), 'V');
        assert_eq!(m.class_of("p"), 'B');
        assert_eq!(m.class_of("k"), DEFAULT_CLASS);
        assert!(SoundClassModel::new("bad", vec![("p", '0')]).is_err());
    }

    #[test]
    fn skeleton_examples() {
        assert_eq!(consonant_skeleton("TVK", 2), "TK");
        assert_eq!(consonant_skeleton("VV", 2), "");
        assert_eq!(consonant_skeleton("TVKVR", 2), "TK");
        assert_eq!(consonant_skeleton("T0VK", 2), "TK");
    }
}
