//! Corpus evaluation: labels, corpus loading, before/after lexicon comparison
//! and agreement metrics.

mod corpus;
mod export;
mod report;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{polarity_scores, EngineConfig, SentimentScores};
use crate::lexicon::Lexicon;

pub use corpus::{load_corpus, parse_corpus, CorpusFormat, LabeledDocument};
pub use export::{
    export_report, export_scored, format_compound, render_report, render_scored, ReportFormat,
    ScoredFormat,
};
pub use report::{evaluate, AgreementMetrics, ClassMetrics, ConfusionMatrix, EvaluationReport, FlipTable, Transition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Negative,
    Neutral,
    Positive,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Negative, Label::Neutral, Label::Positive];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Negative => "negative",
            Label::Neutral => "neutral",
            Label::Positive => "positive",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "negative" => Ok(Label::Negative),
            "neutral" => Ok(Label::Neutral),
            "positive" => Ok(Label::Positive),
            _ => Err(s.to_string()),
        }
    }
}

/// Compound cut-offs for [`classify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub positive: f64,
    pub negative: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            positive: 0.05,
            negative: -0.05,
        }
    }
}

impl Thresholds {
    pub fn new(positive: f64, negative: f64) -> Result<Self, String> {
        if !(positive.is_finite() && negative.is_finite()) || negative >= positive {
            return Err(format!(
                "negative threshold {negative} must be below positive threshold {positive}"
            ));
        }
        Ok(Self { positive, negative })
    }

    pub fn classify(&self, compound: f64) -> Label {
        classify(compound, self.positive, self.negative)
    }
}

/// Positive at or above `pos_threshold`, negative at or below
/// `neg_threshold`, neutral in between.
pub fn classify(compound: f64, pos_threshold: f64, neg_threshold: f64) -> Label {
    if compound >= pos_threshold {
        Label::Positive
    } else if compound <= neg_threshold {
        Label::Negative
    } else {
        Label::Neutral
    }
}

/// One document scored against the base and the augmented lexicon.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub id: String,
    pub text: String,
    pub compound_before: f64,
    pub compound_after: f64,
    pub label_before: Label,
    pub label_after: Label,
    pub gold: Option<Label>,
}

/// Scores every document against both lexicons. Rows come back in corpus
/// order; documents are scored in parallel.
pub fn compare_lexicons(
    corpus: &[LabeledDocument],
    base: &Lexicon,
    augmented: &Lexicon,
    cfg: &EngineConfig,
    thresholds: Thresholds,
) -> Vec<ComparisonRow> {
    corpus
        .par_iter()
        .map(|doc| {
            let before = polarity_scores(&doc.text, base, cfg).compound;
            let after = polarity_scores(&doc.text, augmented, cfg).compound;
            ComparisonRow {
                id: doc.id.clone(),
                text: doc.text.clone(),
                compound_before: before,
                compound_after: after,
                label_before: thresholds.classify(before),
                label_after: thresholds.classify(after),
                gold: doc.gold,
            }
        })
        .collect()
}

/// One document scored against a single lexicon.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDocument {
    pub id: String,
    pub text: String,
    pub scores: SentimentScores,
    pub label: Label,
    pub gold: Option<Label>,
}

/// Agreement of scored labels with gold over the gold-labeled documents;
/// `None` when no document carries a gold label.
pub fn agreement(docs: &[ScoredDocument]) -> Option<AgreementMetrics> {
    let mut confusion = ConfusionMatrix::new();
    for doc in docs {
        if let Some(gold) = doc.gold {
            confusion.add(gold, doc.label);
        }
    }
    (confusion.total() > 0).then(|| AgreementMetrics::from_confusion(confusion))
}

pub fn score_corpus(
    corpus: &[LabeledDocument],
    lexicon: &Lexicon,
    cfg: &EngineConfig,
    thresholds: Thresholds,
) -> Vec<ScoredDocument> {
    corpus
        .par_iter()
        .map(|doc| {
            let scores = polarity_scores(&doc.text, lexicon, cfg);
            ScoredDocument {
                id: doc.id.clone(),
                text: doc.text.clone(),
                label: thresholds.classify(scores.compound),
                scores,
                gold: doc.gold,
            }
        })
        .collect()
}
