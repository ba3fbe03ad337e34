//! Context rules applied to individual lexicon hits.

use thiserror::Error;

use super::tokenize::{is_all_caps, TokenizedDocument};
use super::EngineConfig;
use crate::lexicon::Lexicon;

pub const NEGATIONS: [&str; 59] = [
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt", "ain't", "aren't",
    "can't", "couldn't", "daren't", "didn't", "doesn't", "dont", "hadnt", "hasnt", "havent",
    "isnt", "mightnt", "mustnt", "neither", "don't", "hadn't", "hasn't", "haven't", "isn't",
    "mightn't", "mustn't", "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing",
    "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent", "oughtn't", "shan't",
    "shouldn't", "uh-uh", "wasn't", "weren't", "without", "wont", "wouldnt", "won't", "wouldn't",
    "rarely", "seldom", "despite",
];

const BOOSTERS_UP: [&str; 46] = [
    "absolutely", "amazingly", "awfully", "completely", "considerably", "decidedly", "deeply",
    "effing", "enormously", "entirely", "especially", "exceptionally", "extremely", "fabulously",
    "flipping", "flippin", "fricking", "frickin", "frigging", "friggin", "fully", "fucking",
    "greatly", "hella", "highly", "hugely", "incredibly", "intensely", "majorly", "more", "most",
    "particularly", "purely", "quite", "really", "remarkably", "so", "substantially", "thoroughly",
    "totally", "tremendously", "uber", "unbelievably", "unusually", "utterly", "very",
];

const BOOSTERS_DOWN: [&str; 20] = [
    "almost", "barely", "hardly", "just enough", "kind of", "kinda", "kindof", "kind-of", "less",
    "little", "marginally", "occasionally", "partly", "scarcely", "slightly", "somewhat", "sort of",
    "sorta", "sortof", "sort-of",
];

/// Fixed-valence idioms. Matched case-sensitively on surface forms.
const IDIOMS: [(&str, f64); 7] = [
    ("the shit", 3.0),
    ("the bomb", 3.0),
    ("bad ass", 1.5),
    ("yeah right", -2.0),
    ("cut the mustard", 2.0),
    ("kiss of death", -1.5),
    ("hand to mouth", -2.0),
];

const NEVER_SO_SCALAR: f64 = 1.5;
const NEVER_SO_FAR_SCALAR: f64 = 1.25;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("token index {index} out of range for {len} tokens")]
pub struct IndexOutOfRange {
    pub index: usize,
    pub len: usize,
}

/// +1 for an intensifier, -1 for a dampener, `None` otherwise.
pub fn booster_direction(key: &str) -> Option<f64> {
    if BOOSTERS_UP.contains(&key) {
        Some(1.0)
    } else if BOOSTERS_DOWN.contains(&key) {
        Some(-1.0)
    } else {
        None
    }
}

pub fn is_negation_word(key: &str) -> bool {
    NEGATIONS.contains(&key)
}

fn negated(key: &str) -> bool {
    is_negation_word(key) || key.contains("n't")
}

fn idiom_valence(seq: &str) -> Option<f64> {
    IDIOMS.iter().find(|(k, _)| *k == seq).map(|(_, v)| *v)
}

/// Contextual valence of the token at `index`. Returns 0 for tokens outside
/// the lexicon and for boosters and negations themselves.
pub fn token_valence(
    doc: &TokenizedDocument,
    index: usize,
    lexicon: &Lexicon,
    cfg: &EngineConfig,
) -> Result<f64, IndexOutOfRange> {
    let len = doc.len();
    if index >= len {
        return Err(IndexOutOfRange { index, len });
    }
    let keys = &doc.keys;
    let words = &doc.tokens;
    let key = keys[index].as_str();

    let kind_of = key == "kind" && keys.get(index + 1).is_some_and(|k| k == "of");
    if kind_of || booster_direction(key).is_some() || is_negation_word(key) {
        return Ok(0.0);
    }
    let Some(base) = lexicon.valence(key) else {
        return Ok(0.0);
    };

    let mut valence = base;
    if doc.is_cap_differential && is_all_caps(&words[index]) {
        if valence > 0.0 {
            valence += cfg.caps_scalar;
        } else {
            valence -= cfg.caps_scalar;
        }
    }

    for back in 0..3 {
        if index <= back {
            break;
        }
        let prev = index - back - 1;
        if lexicon.contains(&keys[prev]) {
            continue;
        }
        let s = booster_scalar(&words[prev], &keys[prev], valence, doc.is_cap_differential, cfg);
        valence += s * cfg.booster_distance_decay[back];
        valence = negation_check(valence, doc, back, index, cfg);
        if back == 2 {
            valence = idiom_check(valence, words, index, cfg);
        }
    }

    Ok(least_check(valence, keys, index, lexicon, cfg))
}

fn booster_scalar(word: &str, key: &str, valence: f64, cap_diff: bool, cfg: &EngineConfig) -> f64 {
    let Some(direction) = booster_direction(key) else {
        return 0.0;
    };
    let mut scalar = direction * cfg.booster_increment;
    if valence < 0.0 {
        scalar = -scalar;
    }
    if cap_diff && is_all_caps(word) {
        if valence > 0.0 {
            scalar += cfg.caps_scalar;
        } else {
            scalar -= cfg.caps_scalar;
        }
    }
    scalar
}

fn negation_check(valence: f64, doc: &TokenizedDocument, back: usize, i: usize, cfg: &EngineConfig) -> f64 {
    let w = &doc.tokens;
    let is_so_this = |s: &str| s == "so" || s == "this";
    match back {
        0 => {
            if negated(&doc.keys[i - 1]) {
                return valence * cfg.negation_scalar;
            }
        }
        1 => {
            if w[i - 2] == "never" && is_so_this(&w[i - 1]) {
                return valence * NEVER_SO_SCALAR;
            } else if negated(&doc.keys[i - 2]) {
                return valence * cfg.negation_scalar;
            }
        }
        _ => {
            if (w[i - 3] == "never" && is_so_this(&w[i - 2])) || is_so_this(&w[i - 1]) {
                return valence * NEVER_SO_FAR_SCALAR;
            } else if negated(&doc.keys[i - 3]) {
                return valence * cfg.negation_scalar;
            }
        }
    }
    valence
}

/// Only reached with `i >= 3`.
fn idiom_check(mut valence: f64, w: &[String], i: usize, cfg: &EngineConfig) -> f64 {
    let one_zero = format!("{} {}", w[i - 1], w[i]);
    let two_one_zero = format!("{} {} {}", w[i - 2], w[i - 1], w[i]);
    let two_one = format!("{} {}", w[i - 2], w[i - 1]);
    let three_two_one = format!("{} {} {}", w[i - 3], w[i - 2], w[i - 1]);
    let three_two = format!("{} {}", w[i - 3], w[i - 2]);

    for seq in [&one_zero, &two_one_zero, &two_one, &three_two_one, &three_two] {
        if let Some(v) = idiom_valence(seq) {
            valence = v;
            break;
        }
    }
    if w.len() - 1 > i {
        if let Some(v) = idiom_valence(&format!("{} {}", w[i], w[i + 1])) {
            valence = v;
        }
    }
    if w.len() - 1 > i + 1 {
        if let Some(v) = idiom_valence(&format!("{} {} {}", w[i], w[i + 1], w[i + 2])) {
            valence = v;
        }
    }
    if booster_direction(&three_two).is_some() || booster_direction(&two_one).is_some() {
        valence -= cfg.booster_increment;
    }
    valence
}

fn least_check(valence: f64, keys: &[String], i: usize, lexicon: &Lexicon, cfg: &EngineConfig) -> f64 {
    if i > 0 && keys[i - 1] == "least" && !lexicon.contains("least") {
        if i > 1 && (keys[i - 2] == "at" || keys[i - 2] == "very") {
            return valence;
        }
        return valence * cfg.negation_scalar;
    }
    valence
}

/// Result of a longest-match-first phrase lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgramMatch {
    pub matched: Option<String>,
    pub span: usize,
}

/// Longest lexicon entry spanning `index..index + n` for `n` from
/// `max_ngram` down to 1.
pub fn match_ngrams(doc: &TokenizedDocument, index: usize, lexicon: &Lexicon, cfg: &EngineConfig) -> NgramMatch {
    let remaining = doc.len().saturating_sub(index);
    let widest = cfg.max_ngram.min(lexicon.max_phrase_words()).min(remaining);
    for n in (2..=widest).rev() {
        let phrase = doc.keys[index..index + n].join(" ");
        if lexicon.contains(&phrase) {
            return NgramMatch {
                matched: Some(phrase),
                span: n,
            };
        }
    }
    match doc.keys.get(index) {
        Some(k) if lexicon.contains(k) => NgramMatch {
            matched: Some(k.clone()),
            span: 1,
        },
        _ => NgramMatch { matched: None, span: 1 },
    }
}

/// Re-tokenizes `doc` so that every matched multi-word phrase becomes one
/// token. Single-word tokens pass through unchanged.
pub fn group_phrases(doc: &TokenizedDocument, lexicon: &Lexicon, cfg: &EngineConfig) -> TokenizedDocument {
    if cfg.max_ngram < 2 || lexicon.max_phrase_words() < 2 {
        return doc.clone();
    }
    let mut tokens = Vec::with_capacity(doc.len());
    let mut keys = Vec::with_capacity(doc.len());
    let mut i = 0;
    while i < doc.len() {
        let m = match_ngrams(doc, i, lexicon, cfg);
        if m.span > 1 {
            tokens.push(doc.tokens[i..i + m.span].join(" "));
            keys.push(m.matched.expect("multi-token spans always carry a match"));
        } else {
            tokens.push(doc.tokens[i].clone());
            keys.push(doc.keys[i].clone());
        }
        i += m.span;
    }
    TokenizedDocument {
        original: doc.original.clone(),
        tokens,
        keys,
        is_cap_differential: doc.is_cap_differential,
    }
}

/// Down-weights everything before the first "but" and up-weights everything
/// after it.
pub fn but_clause_reweight(valences: &mut [f64], keys: &[String], cfg: &EngineConfig) {
    if let Some(pivot) = keys.iter().position(|k| k == "but") {
        for (i, v) in valences.iter_mut().enumerate() {
            if i < pivot {
                *v *= cfg.but_before_weight;
            } else if i > pivot {
                *v *= cfg.but_after_weight;
            }
        }
    }
}

/// Emphasis contributed by exclamation and question marks anywhere in the text.
pub fn punctuation_amplifier(text: &str, cfg: &EngineConfig) -> f64 {
    let bangs = text.matches('!').count().min(cfg.exclamation_max);
    let questions = text.matches('?').count();
    let qm = match questions {
        0 | 1 => 0.0,
        2 | 3 => questions as f64 * cfg.question_unit,
        _ => cfg.question_cap,
    };
    bangs as f64 * cfg.exclamation_unit + qm
}

/// Maps an unbounded valence sum into [-1, 1].
pub fn normalize_compound(sum: f64, cfg: &EngineConfig) -> f64 {
    let squared = sum * sum;
    let norm = if squared.is_infinite() {
        sum.signum()
    } else {
        sum / (squared + cfg.alpha).sqrt()
    };
    norm.clamp(-1.0, 1.0)
}
