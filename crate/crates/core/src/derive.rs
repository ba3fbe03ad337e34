//! Lexicon induction by translation averaging.
//!
//! A Pidgin token that translates to several English sentiment words gets the
//! arithmetic mean of their valences. The mean is kept at full precision; the
//! one-decimal form is only for display.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::DeriveError;
use crate::lexicon::{Lexicon, LexiconEntry, MAX_VALENCE, MIN_VALENCE};

#[derive(Debug, Clone, PartialEq)]
pub struct DerivationRecord {
    pub pidgin_token: String,
    pub sources: Vec<(String, f64)>,
    pub derived_valence: f64,
}

impl DerivationRecord {
    /// The derived valence rounded to one decimal place.
    pub fn display_valence(&self) -> String {
        format!("{:.1}", self.derived_valence)
    }

    /// True when at least one source is positive and another negative.
    pub fn has_mixed_signs(&self) -> bool {
        let pos = self.sources.iter().any(|(_, v)| *v > 0.0);
        let neg = self.sources.iter().any(|(_, v)| *v < 0.0);
        pos && neg
    }

    pub fn to_entry(&self) -> LexiconEntry {
        LexiconEntry::new(&self.pidgin_token, self.derived_valence)
            .expect("derived valence is a mean of in-range values")
    }

    /// Checks the record against a published one-decimal average, if any.
    pub fn lint(&self, claimed: Option<f64>) -> Vec<DerivationWarning> {
        let mut out = Vec::new();
        if self.has_mixed_signs() {
            out.push(DerivationWarning::MixedSign {
                token: self.pidgin_token.clone(),
                sources: self.sources.clone(),
            });
        }
        if let Some(claimed) = claimed {
            let rounded = (self.derived_valence * 10.0).round() / 10.0;
            if (rounded - claimed).abs() > 1e-9 {
                out.push(DerivationWarning::ClaimedMismatch {
                    token: self.pidgin_token.clone(),
                    claimed,
                    computed: self.derived_valence,
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DerivationWarning {
    MixedSign {
        token: String,
        sources: Vec<(String, f64)>,
    },
    ClaimedMismatch {
        token: String,
        claimed: f64,
        computed: f64,
    },
}

impl DerivationWarning {
    pub fn token(&self) -> &str {
        match self {
            Self::MixedSign { token, .. } | Self::ClaimedMismatch { token, .. } => token,
        }
    }
}

impl fmt::Display for DerivationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MixedSign { token, sources } => {
                write!(f, "{token}: sources disagree in sign (")?;
                for (i, (t, v)) in sources.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t} {v}")?;
                }
                f.write_str(")")
            }
            Self::ClaimedMismatch {
                token,
                claimed,
                computed,
            } => write!(
                f,
                "{token}: published average {claimed} but sources average {computed:.4} ({computed:.1})"
            ),
        }
    }
}

/// Averages the source valences for `pidgin_token`.
pub fn derive_entry(
    pidgin_token: &str,
    sources: &[(String, f64)],
) -> Result<DerivationRecord, DeriveError> {
    if sources.is_empty() {
        return Err(DeriveError::EmptySources(pidgin_token.to_string()));
    }
    for (token, valence) in sources {
        if !valence.is_finite() || !(MIN_VALENCE..=MAX_VALENCE).contains(valence) {
            return Err(DeriveError::SourceOutOfRange {
                pidgin: pidgin_token.to_string(),
                source_token: token.clone(),
                valence: *valence,
            });
        }
    }
    // summing in sorted order makes the mean independent of source order
    let mut values: Vec<f64> = sources.iter().map(|(_, v)| *v).collect();
    values.sort_by(f64::total_cmp);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let derived_valence = mean.clamp(values[0], values[values.len() - 1]);

    Ok(DerivationRecord {
        pidgin_token: pidgin_token.to_lowercase(),
        sources: sources.to_vec(),
        derived_valence,
    })
}

/// One source word in a mapping line, optionally with its valence written
/// inline as `word(-2.6)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MappingSource {
    pub token: String,
    pub valence: Option<f64>,
}

/// A line of a derivation mapping file:
/// `pidgin<TAB>english1,english2,...[<TAB>published average]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MappingLine {
    pub line: usize,
    pub pidgin_token: String,
    pub sources: Vec<MappingSource>,
    pub claimed: Option<f64>,
}

pub fn parse_mapping_file(path: impl AsRef<Path>) -> Result<Vec<MappingLine>, DeriveError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| DeriveError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_mapping(&text)
}

pub fn parse_mapping(text: &str) -> Result<Vec<MappingLine>, DeriveError> {
    let mut out: Vec<MappingLine> = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| DeriveError::MalformedMapping { line, reason };
        let cols: Vec<&str> = raw.split('\t').collect();
        if !(2..=3).contains(&cols.len()) {
            return Err(bad(format!("expected 2 or 3 tab-separated columns, found {}", cols.len())));
        }
        let pidgin_token = cols[0].trim().to_lowercase();
        if pidgin_token.is_empty() {
            return Err(bad("empty Pidgin token".into()));
        }
        if out.iter().any(|m| m.pidgin_token == pidgin_token) {
            return Err(bad(format!("{pidgin_token:?} is mapped twice")));
        }
        let sources = cols[1]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(parse_source)
            .collect::<Vec<_>>();
        if sources.is_empty() {
            return Err(bad(format!("no English sources for {pidgin_token:?}")));
        }
        let claimed = match cols.get(2).map(|s| s.trim()).filter(|s| !s.is_empty()) {
            Some(s) => Some(parse_loose_number(s).ok_or_else(|| bad(format!("bad published average {s:?}")))?),
            None => None,
        };
        out.push(MappingLine {
            line,
            pidgin_token,
            sources,
            claimed,
        });
    }
    Ok(out)
}

fn parse_source(item: &str) -> MappingSource {
    if let Some(open) = item.rfind('(') {
        if let Some(inner) = item[open + 1..].strip_suffix(')') {
            if let Some(v) = parse_loose_number(inner) {
                let token = item[..open].trim();
                if !token.is_empty() {
                    return MappingSource {
                        token: token.to_lowercase(),
                        valence: Some(v),
                    };
                }
            }
        }
    }
    MappingSource {
        token: item.to_lowercase(),
        valence: None,
    }
}

/// Accepts numbers with stray internal spaces, e.g. `- 2.`.
fn parse_loose_number(s: &str) -> Option<f64> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    compact.parse::<f64>().ok().filter(|v| v.is_finite())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub records: Vec<DerivationRecord>,
    pub warnings: Vec<DerivationWarning>,
}

impl Derivation {
    pub fn to_lexicon(&self, name: impl Into<String>) -> Lexicon {
        Lexicon::from_entries(name, self.records.iter().map(DerivationRecord::to_entry))
    }

    pub fn mixed_sign_tokens(&self) -> Vec<&str> {
        self.warnings
            .iter()
            .filter(|w| matches!(w, DerivationWarning::MixedSign { .. }))
            .map(DerivationWarning::token)
            .collect()
    }
}

/// Derives one record per mapping line, looking up sources without an inline
/// valence in `source`. Every unresolvable English token is collected before
/// failing.
pub fn derive_all(mapping: &[MappingLine], source: &Lexicon) -> Result<Derivation, DeriveError> {
    let mut unresolved: Vec<String> = Vec::new();
    let mut resolved: Vec<Vec<(String, f64)>> = Vec::with_capacity(mapping.len());
    for line in mapping {
        let mut pairs = Vec::with_capacity(line.sources.len());
        for src in &line.sources {
            match src.valence.or_else(|| source.valence(&src.token)) {
                Some(v) => pairs.push((src.token.clone(), v)),
                None => {
                    if !unresolved.contains(&src.token) {
                        unresolved.push(src.token.clone());
                    }
                }
            }
        }
        resolved.push(pairs);
    }
    if !unresolved.is_empty() {
        return Err(DeriveError::Unresolved(unresolved));
    }

    let mut records = Vec::with_capacity(mapping.len());
    let mut warnings = Vec::new();
    for (line, pairs) in mapping.iter().zip(resolved) {
        let record = derive_entry(&line.pidgin_token, &pairs)?;
        warnings.extend(record.lint(line.claimed));
        records.push(record);
    }
    Ok(Derivation { records, warnings })
}
