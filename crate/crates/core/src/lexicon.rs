//! VADER-format sentiment lexicons.
//!
//! A lexicon file has one entry per line:
//!
//! ```text
//! token<TAB>mean<TAB>stddev<TAB>[r1, r2, ...]
//! ```
//!
//! The stddev and ratings columns may be omitted, which is the usual shape of
//! hand-built augmentation files. Tokens are case-folded on the way in and on
//! every lookup.

use std::borrow::Cow;
use std::collections::btree_map::{self, BTreeMap};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::LexiconError;

pub const MIN_VALENCE: f64 = -4.0;
pub const MAX_VALENCE: f64 = 4.0;

const MEAN_TOLERANCE: f64 = 1e-6;

/// One sentiment token with its mean valence.
#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    token: String,
    valence: f64,
    dispersion: f64,
    raw_ratings: Vec<f64>,
}

impl LexiconEntry {
    /// An entry with no rating distribution, as produced by derivation or a
    /// two-column augmentation file.
    pub fn new(token: &str, valence: f64) -> Result<Self, LexiconError> {
        Self::with_ratings(token, valence, 0.0, Vec::new())
    }

    pub fn with_ratings(
        token: &str,
        valence: f64,
        dispersion: f64,
        raw_ratings: Vec<f64>,
    ) -> Result<Self, LexiconError> {
        let entry = Self::unchecked(token, valence, dispersion, raw_ratings)?;
        if let Some(mean) = entry.ratings_mean() {
            if (mean - valence).abs() > MEAN_TOLERANCE {
                return Err(LexiconError::InvalidEntry {
                    token: entry.token,
                    reason: format!("valence {valence} differs from mean of raw ratings {mean}"),
                });
            }
        }
        Ok(entry)
    }

    /// Validates everything except agreement between valence and ratings.
    fn unchecked(
        token: &str,
        valence: f64,
        dispersion: f64,
        raw_ratings: Vec<f64>,
    ) -> Result<Self, LexiconError> {
        let invalid = |reason: &str| LexiconError::InvalidEntry {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        if token.is_empty() {
            return Err(invalid("empty token"));
        }
        if token.contains(['\t', '\n', '\r']) {
            return Err(invalid("token contains a tab or line break"));
        }
        if !valence.is_finite() || !(MIN_VALENCE..=MAX_VALENCE).contains(&valence) {
            return Err(invalid("valence outside [-4, 4]"));
        }
        if !dispersion.is_finite() || dispersion < 0.0 {
            return Err(invalid("dispersion must be a non-negative number"));
        }
        if raw_ratings.iter().any(|r| !r.is_finite()) {
            return Err(invalid("non-finite raw rating"));
        }
        Ok(Self {
            token: token.to_lowercase(),
            valence,
            dispersion,
            raw_ratings,
        })
    }

    pub fn token(&self) -> &str {
        &self.token
    }

    pub fn valence(&self) -> f64 {
        self.valence
    }

    pub fn dispersion(&self) -> f64 {
        self.dispersion
    }

    pub fn raw_ratings(&self) -> &[f64] {
        &self.raw_ratings
    }

    /// Number of space-separated words in the token; greater than one for
    /// phrase entries.
    pub fn word_count(&self) -> usize {
        self.token.split(' ').filter(|w| !w.is_empty()).count().max(1)
    }

    fn ratings_mean(&self) -> Option<f64> {
        if self.raw_ratings.is_empty() {
            None
        } else {
            Some(self.raw_ratings.iter().sum::<f64>() / self.raw_ratings.len() as f64)
        }
    }
}

/// How strictly a lexicon file is validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Duplicate tokens (after case folding) and means that disagree with
    /// their raw ratings are errors.
    #[default]
    Strict,
    /// Accepts the published reference lexicon as distributed. That file
    /// repeats a handful of tokens and has one mean that does not match its
    /// ratings. Duplicates resolve the way a case-folding lookup over the raw
    /// file would: an entry spelled in lowercase beats a case variant, and
    /// among equal spellings the later line wins. Each resolution is reported
    /// as a warning.
    Compat,
}

impl FromStr for ParseMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Self::Strict),
            "compat" => Ok(Self::Compat),
            other => Err(format!("unknown lexicon mode {other:?} (expected strict or compat)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

#[derive(Debug)]
pub struct ParsedLexicon {
    pub lexicon: Lexicon,
    pub warnings: Vec<ParseWarning>,
}

/// A set of sentiment entries keyed by lowercase token.
///
/// Equality compares entries only; the name is a display label.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    name: String,
    entries: BTreeMap<String, LexiconEntry>,
    max_phrase_words: usize,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Lexicon {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            entries: BTreeMap::new(),
            max_phrase_words: 0,
        }
    }

    pub fn from_entries(
        name: impl Into<String>,
        entries: impl IntoIterator<Item = LexiconEntry>,
    ) -> Self {
        let mut lex = Self::new(name);
        for entry in entries {
            lex.insert(entry);
        }
        lex
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Inserts an entry, returning the one it replaced.
    pub fn insert(&mut self, entry: LexiconEntry) -> Option<LexiconEntry> {
        self.max_phrase_words = self.max_phrase_words.max(entry.word_count());
        self.entries.insert(entry.token.clone(), entry)
    }

    pub fn get(&self, token: &str) -> Option<&LexiconEntry> {
        self.entries.get(fold(token).as_ref())
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.get(token).map(LexiconEntry::valence)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.get(token).is_some()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in ascending token order.
    pub fn iter(&self) -> btree_map::Values<'_, String, LexiconEntry> {
        self.entries.values()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Longest phrase entry, in words. Zero for an empty lexicon.
    pub fn max_phrase_words(&self) -> usize {
        self.max_phrase_words
    }

    pub fn parse_file(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        Ok(Self::parse_file_with(path, ParseMode::Strict)?.lexicon)
    }

    pub fn parse_file_with(
        path: impl AsRef<Path>,
        mode: ParseMode,
    ) -> Result<ParsedLexicon, LexiconError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::parse_str(&text, name, mode)
    }

    pub fn parse_str(
        text: &str,
        name: impl Into<String>,
        mode: ParseMode,
    ) -> Result<ParsedLexicon, LexiconError> {
        let mut lexicon = Lexicon::new(name);
        let mut warnings = Vec::new();
        // folded token -> (line, original spelling was lowercase)
        let mut seen: HashMap<String, (usize, bool)> = HashMap::new();

        for (idx, raw) in text.split('\n').enumerate() {
            let line_no = idx + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim().is_empty() {
                continue;
            }
            let (entry, ratings_mismatch) = parse_line(line, line_no, mode)?;
            if let Some(message) = ratings_mismatch {
                warnings.push(ParseWarning {
                    line: line_no,
                    message,
                });
            }

            let original = line.split('\t').next().unwrap_or_default();
            let is_lower = original == entry.token;
            match seen.get(&entry.token).copied() {
                None => {
                    seen.insert(entry.token.clone(), (line_no, is_lower));
                    lexicon.insert(entry);
                }
                Some((first, _)) if mode == ParseMode::Strict => {
                    return Err(LexiconError::DuplicateToken {
                        line: line_no,
                        first,
                        token: entry.token,
                    });
                }
                Some((first, prev_lower)) => {
                    let replace = is_lower || !prev_lower;
                    warnings.push(ParseWarning {
                        line: line_no,
                        message: format!(
                            "duplicate token {:?} (also on line {first}); {}",
                            entry.token,
                            if replace { "this line wins" } else { "ignored" }
                        ),
                    });
                    if replace {
                        seen.insert(entry.token.clone(), (line_no, is_lower));
                        lexicon.insert(entry);
                    }
                }
            }
        }
        Ok(ParsedLexicon { lexicon, warnings })
    }

    /// Four-column TSV, tokens in ascending order, LF line endings. Valences
    /// are printed with enough digits to parse back to the same `f64`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::with_capacity(self.entries.len() * 48);
        for entry in self.entries.values() {
            let _ = write!(
                out,
                "{}\t{:?}\t{:?}\t[",
                entry.token, entry.valence, entry.dispersion
            );
            for (i, r) in entry.raw_ratings.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{r}");
            }
            out.push_str("]\n");
        }
        out
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<(), LexiconError> {
        let path = path.as_ref();
        fs::write(path, self.to_tsv()).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

fn fold(token: &str) -> Cow<'_, str> {
    if token.chars().any(char::is_uppercase) {
        Cow::Owned(token.to_lowercase())
    } else {
        Cow::Borrowed(token)
    }
}

/// Parses one non-empty line. The second value carries a warning when compat
/// mode accepted a mean that disagrees with its ratings.
fn parse_line(
    line: &str,
    line_no: usize,
    mode: ParseMode,
) -> Result<(LexiconEntry, Option<String>), LexiconError> {
    let malformed = |reason: String| LexiconError::Malformed {
        line: line_no,
        reason,
    };
    let cols: Vec<&str> = line.split('\t').collect();
    if !(2..=4).contains(&cols.len()) {
        return Err(malformed(format!(
            "expected 2 to 4 tab-separated columns, found {}",
            cols.len()
        )));
    }
    let token = cols[0];
    if token.is_empty() {
        return Err(malformed("empty token".into()));
    }
    let valence: f64 = parse_number(cols[1]).ok_or_else(|| malformed(format!("bad mean {:?}", cols[1])))?;
    if !(MIN_VALENCE..=MAX_VALENCE).contains(&valence) {
        return Err(LexiconError::ValenceOutOfRange {
            line: line_no,
            token: token.to_lowercase(),
            valence,
        });
    }
    let dispersion = match cols.get(2) {
        Some(s) => parse_number(s).ok_or_else(|| malformed(format!("bad stddev {s:?}")))?,
        None => 0.0,
    };
    let raw_ratings = match cols.get(3) {
        Some(s) => serde_json::from_str::<Vec<f64>>(s.trim())
            .map_err(|e| malformed(format!("bad ratings list {s:?}: {e}")))?,
        None => Vec::new(),
    };

    let relabel = |e: LexiconError| match e {
        LexiconError::InvalidEntry { reason, .. } => malformed(reason),
        other => other,
    };
    match mode {
        ParseMode::Strict => {
            let entry = LexiconEntry::with_ratings(token, valence, dispersion, raw_ratings).map_err(relabel)?;
            Ok((entry, None))
        }
        ParseMode::Compat => {
            let entry = LexiconEntry::unchecked(token, valence, dispersion, raw_ratings).map_err(relabel)?;
            let warning = entry
                .ratings_mean()
                .filter(|mean| (mean - valence).abs() > MEAN_TOLERANCE)
                .map(|mean| format!("mean {valence} of {:?} differs from ratings mean {mean}; kept as written", entry.token));
            Ok((entry, warning))
        }
    }
}

fn parse_number(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// What to do when a token exists in both the base and the augmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergePolicy {
    /// The augmentation entry replaces the base entry.
    #[default]
    Override,
    KeepBase,
    ErrorOnConflict,
}

impl FromStr for MergePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "override" => Ok(Self::Override),
            "keep-base" => Ok(Self::KeepBase),
            "error-on-conflict" => Ok(Self::ErrorOnConflict),
            other => Err(format!(
                "unknown merge policy {other:?} (expected override, keep-base or error-on-conflict)"
            )),
        }
    }
}

/// Tokens present in both lexicons, ascending.
pub fn collisions<'a>(base: &Lexicon, augmentation: &'a Lexicon) -> Vec<&'a str> {
    augmentation
        .tokens()
        .filter(|t| base.entries.contains_key(*t))
        .collect()
}

/// Combines a base lexicon with an augmentation. Neither input is modified.
/// The result is named `base+augmentation`.
pub fn merge(
    base: &Lexicon,
    augmentation: &Lexicon,
    policy: MergePolicy,
) -> Result<Lexicon, LexiconError> {
    let mut merged = base.clone();
    merged.name = format!("{}+{}", base.name, augmentation.name);
    for entry in augmentation.iter() {
        if base.entries.contains_key(&entry.token) {
            match policy {
                MergePolicy::Override => {}
                MergePolicy::KeepBase => continue,
                MergePolicy::ErrorOnConflict => {
                    return Err(LexiconError::MergeConflict(entry.token.clone()))
                }
            }
        }
        merged.insert(entry.clone());
    }
    Ok(merged)
}
