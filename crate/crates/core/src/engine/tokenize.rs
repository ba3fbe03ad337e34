//! Whitespace tokenization with reference-compatible punctuation handling.
//!
//! A token loses a leading or trailing punctuation run only when that run is
//! one of [`PUNCTUATION_AFFIXES`] and what remains is a punctuation-free word
//! of at least two characters. Everything else, emoticons included, is kept
//! as written. Single-character tokens are dropped.

use super::EngineConfig;

pub const PUNCTUATION_AFFIXES: [&str; 17] = [
    ".", "!", "?", ",", ";", ":", "-", "'", "\"", "!!", "!!!", "??", "???", "?!?", "!?!", "?!?!",
    "!?!?",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedDocument {
    pub original: String,
    /// Surface forms, case preserved.
    pub tokens: Vec<String>,
    /// Lowercased lookup forms, aligned with `tokens`. With elongation
    /// normalization on, letter runs longer than three are cut to three.
    pub keys: Vec<String>,
    /// Some, but not all, tokens are ALL CAPS.
    pub is_cap_differential: bool,
}

impl TokenizedDocument {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

pub fn tokenize(text: &str, cfg: &EngineConfig) -> TokenizedDocument {
    let tokens: Vec<String> = text
        .split(is_split_whitespace)
        .filter(|w| w.chars().nth(1).is_some())
        .map(|w| strip_affix(w).to_string())
        .collect();
    let keys = tokens
        .iter()
        .map(|t| {
            let lower = t.to_lowercase();
            if cfg.normalize_elongation {
                collapse_elongation(&lower)
            } else {
                lower
            }
        })
        .collect();
    let caps = tokens.iter().filter(|t| is_all_caps(t)).count();
    TokenizedDocument {
        original: text.to_string(),
        is_cap_differential: caps > 0 && caps < tokens.len(),
        tokens,
        keys,
    }
}

// Unicode whitespace plus the ASCII information separators, matching the
// usual `str.split()` notion of whitespace.
fn is_split_whitespace(c: char) -> bool {
    c.is_whitespace() || ('\u{1c}'..='\u{1f}').contains(&c)
}

fn strip_affix(word: &str) -> &str {
    let lead = word.len() - word.trim_start_matches(|c: char| c.is_ascii_punctuation()).len();
    let trail = word.len() - word.trim_end_matches(|c: char| c.is_ascii_punctuation()).len();
    if lead == word.len() {
        return word;
    }
    let (affix, core) = match (lead, trail) {
        (0, 0) => return word,
        (0, t) => (&word[word.len() - t..], &word[..word.len() - t]),
        (l, 0) => (&word[..l], &word[l..]),
        _ => return word,
    };
    let core_ok = core.chars().nth(1).is_some() && !core.chars().any(|c| c.is_ascii_punctuation());
    if core_ok && PUNCTUATION_AFFIXES.contains(&affix) {
        core
    } else {
        word
    }
}

/// At least one cased character and no lowercase ones.
pub fn is_all_caps(word: &str) -> bool {
    let mut cased = false;
    for c in word.chars() {
        if c.is_lowercase() {
            return false;
        }
        cased |= c.is_uppercase();
    }
    cased
}

/// Cuts runs of one repeated letter down to three.
pub fn collapse_elongation(word: &str) -> String {
    let mut out = String::with_capacity(word.len());
    let mut prev = None;
    let mut run = 0;
    for c in word.chars() {
        if Some(c) == prev {
            run += 1;
        } else {
            prev = Some(c);
            run = 1;
        }
        if run <= 3 || !c.is_alphabetic() {
            out.push(c);
        }
    }
    out
}
