//! Lexicon and rule based sentiment scoring for code-mixed Nigerian Pidgin /
//! English social media text.
//!
//! The crate has three layers:
//!
//! * [`lexicon`] and [`derive`]: parse, build, merge and write VADER-format
//!   sentiment lexicons, and induce Pidgin token valences by averaging the
//!   valences of their English meanings.
//! * [`engine`]: tokenization and VADER-compatible scoring (negative, neutral,
//!   positive proportions plus a normalized compound score).
//! * [`eval`]: corpus loading, label classification, before/after lexicon
//!   comparison and agreement metrics.

pub mod derive;
pub mod engine;
pub mod error;
pub mod eval;
pub mod lexicon;

pub use derive::{derive_entry, DerivationRecord, DerivationWarning};
pub use engine::{polarity_scores, EngineConfig, SentimentScores};
pub use error::{CorpusError, DeriveError, LexiconError};
pub use eval::{classify, compare_lexicons, evaluate, Label, LabeledDocument};
pub use lexicon::{merge, Lexicon, LexiconEntry, MergePolicy, ParseMode};
