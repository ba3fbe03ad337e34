use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read or write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: valence {valence} for {token:?} is outside [-4, 4]")]
    ValenceOutOfRange {
        line: usize,
        token: String,
        valence: f64,
    },
    #[error("line {line}: duplicate token {token:?} (first seen on line {first})")]
    DuplicateToken {
        line: usize,
        first: usize,
        token: String,
    },
    #[error("invalid entry {token:?}: {reason}")]
    InvalidEntry { token: String, reason: String },
    #[error("token {0:?} exists in both lexicons and the merge policy forbids conflicts")]
    MergeConflict(String),
}

#[derive(Debug, Error)]
pub enum DeriveError {
    #[error("no source tokens given for {0:?}")]
    EmptySources(String),
    #[error("source {source_token:?} of {pidgin:?} has valence {valence} outside [-4, 4]")]
    SourceOutOfRange {
        pidgin: String,
        source_token: String,
        valence: f64,
    },
    #[error("mapping line {line}: {reason}")]
    MalformedMapping { line: usize, reason: String },
    #[error("unresolved English tokens: {}", .0.join(", "))]
    Unresolved(Vec<String>),
    #[error("mixed-sign sources for {}", .0.join(", "))]
    MixedSign(Vec<String>),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("failed to read or write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("row {row}: {reason}")]
    Malformed { row: usize, reason: String },
    #[error("row {row}: unknown label {label:?}")]
    UnknownLabel { row: usize, label: String },
    #[error("row {row}: empty text")]
    EmptyText { row: usize },
    #[error("row {row}: duplicate id {id:?}")]
    DuplicateId { row: usize, id: String },
    #[error("header has no `text` column")]
    MissingTextColumn,
    #[error("unsupported corpus format {0:?}")]
    UnknownFormat(String),
}
