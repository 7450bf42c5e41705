use alloc::string::String;
use alloc::vec::Vec;

use unicode_normalization::char::is_combining_mark;

use super::IngestError;

/// Tie bars join the next base character into the current segment (`t͡s`).
fn is_tie_bar(c: char) -> bool {
    matches!(c, '\u{0361}' | '\u{035C}')
}

/// Characters that attach to the preceding base character: combining marks
/// plus the spacing modifier letters IPA uses for aspiration, length, tone
/// and secondary articulation.
pub fn is_diacritic(c: char) -> bool {
    is_combining_mark(c)
        || ('\u{02B0}'..='\u{02FF}').contains(&c)
        || ('\u{1D2C}'..='\u{1D6A}').contains(&c)
        || ('\u{1D9B}'..='\u{1DBF}').contains(&c)
        || c == '\u{2071}'
        || c == '\u{207F}'
}

/// Split an IPA transcription into segments.
///
/// Space-separated input is taken verbatim. Unsegmented input is split into a
/// base character followed by any attached diacritics.
pub fn tokenize_ipa(raw: &str) -> Result<Vec<String>, IngestError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(IngestError::EmptyForm);
    }
    if trimmed.contains(char::is_whitespace) {
        return Ok(trimmed.split_whitespace().map(String::from).collect());
    }

    let mut tokens: Vec<String> = Vec::new();
    let mut joining = false;
    for c in trimmed.chars() {
        let attach = joining || is_diacritic(c);
        match tokens.last_mut() {
            Some(last) if attach => last.push(c),
            _ => tokens.push(String::from(c)),
        }
        joining = is_tie_bar(c);
    }
    if tokens.is_empty() {
        return Err(IngestError::EmptyForm);
    }
    Ok(tokens)
}
