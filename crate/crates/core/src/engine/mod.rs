//! VADER-compatible sentiment scoring.
//!
//! Scoring is a pure function of `(text, lexicon, config)`. The lexicon and
//! config are only read, so any number of threads may score concurrently.

mod config;
pub mod rules;
pub mod tokenize;

use serde::{Deserialize, Serialize};

pub use config::{ConfigError, EngineConfig};
pub use rules::{
    but_clause_reweight, group_phrases, match_ngrams, normalize_compound, punctuation_amplifier,
    token_valence, IndexOutOfRange, NgramMatch,
};
pub use tokenize::{tokenize, TokenizedDocument};

use crate::lexicon::Lexicon;

/// Proportions of negative, neutral and positive content plus the normalized
/// compound score.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SentimentScores {
    pub negative: f64,
    pub neutral: f64,
    pub positive: f64,
    pub compound: f64,
}

/// Contextual valence of every token (or matched phrase) after the "but"
/// rule, aligned with the returned document's tokens.
pub fn token_valences(text: &str, lexicon: &Lexicon, cfg: &EngineConfig) -> (TokenizedDocument, Vec<f64>) {
    let doc = group_phrases(&tokenize(text, cfg), lexicon, cfg);
    let mut valences: Vec<f64> = (0..doc.len())
        .map(|i| token_valence(&doc, i, lexicon, cfg).expect("index is in range"))
        .collect();
    but_clause_reweight(&mut valences, &doc.keys, cfg);
    (doc, valences)
}

pub fn polarity_scores(text: &str, lexicon: &Lexicon, cfg: &EngineConfig) -> SentimentScores {
    let (_, valences) = token_valences(text, lexicon, cfg);
    if valences.is_empty() {
        return SentimentScores::default();
    }

    let amplifier = punctuation_amplifier(text, cfg);
    let mut total: f64 = valences.iter().sum();
    if total > 0.0 {
        total += amplifier;
    } else if total < 0.0 {
        total -= amplifier;
    }
    let compound = normalize_compound(total, cfg);

    // each neutral token counts as 1, so hits are shifted by 1 away from zero
    let mut pos = 0.0;
    let mut neg = 0.0;
    let mut neutral = 0usize;
    for &v in &valences {
        if v > 0.0 {
            pos += v + 1.0;
        } else if v < 0.0 {
            neg += v - 1.0;
        } else {
            neutral += 1;
        }
    }
    if pos > neg.abs() {
        pos += amplifier;
    } else if pos < neg.abs() {
        neg -= amplifier;
    }
    let denom = pos + neg.abs() + neutral as f64;

    SentimentScores {
        negative: (neg / denom).abs(),
        neutral: (neutral as f64 / denom).abs(),
        positive: (pos / denom).abs(),
        compound,
    }
}
