use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use super::Label;
use crate::error::CorpusError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDocument {
    pub id: String,
    pub text: String,
    pub gold: Option<Label>,
}

impl LabeledDocument {
    pub fn new(id: impl Into<String>, text: impl Into<String>, gold: Option<Label>) -> Self {
        Self {
            id: id.into(),
            text: text.into(),
            gold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Csv,
    Tsv,
    Jsonl,
}

impl CorpusFormat {
    /// Guesses from the file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        ext.parse().ok()
    }
}

impl FromStr for CorpusFormat {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "tsv" | "tab" => Ok(Self::Tsv),
            "jsonl" | "ndjson" => Ok(Self::Jsonl),
            other => Err(CorpusError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Vec<LabeledDocument>, CorpusError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_corpus(&text, format)
}

pub fn parse_corpus(text: &str, format: CorpusFormat) -> Result<Vec<LabeledDocument>, CorpusError> {
    let raw = match format {
        CorpusFormat::Csv => parse_delimited(text, b',')?,
        CorpusFormat::Tsv => parse_delimited(text, b'\t')?,
        CorpusFormat::Jsonl => parse_jsonl(text)?,
    };
    finish(raw)
}

struct RawRecord {
    row: usize,
    id: Option<String>,
    text: String,
    label: Option<String>,
}

fn parse_delimited(text: &str, delimiter: u8) -> Result<Vec<RawRecord>, CorpusError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CorpusError::Malformed {
            row: 0,
            reason: e.to_string(),
        })?
        .clone();
    let column = |name: &str| headers.iter().position(|h| h.trim().eq_ignore_ascii_case(name));
    let text_col = column("text").ok_or(CorpusError::MissingTextColumn)?;
    let label_col = column("label");
    let id_col = column("id");

    let mut out = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| CorpusError::Malformed {
            row,
            reason: e.to_string(),
        })?;
        let field = |col: Option<usize>| {
            col.and_then(|c| record.get(c))
                .map(str::to_string)
                .filter(|s| !s.trim().is_empty())
        };
        out.push(RawRecord {
            row,
            id: field(id_col),
            text: record.get(text_col).unwrap_or_default().to_string(),
            label: field(label_col),
        });
    }
    Ok(out)
}

#[derive(Deserialize)]
struct JsonRecord {
    text: Option<String>,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    id: Option<serde_json::Value>,
}

fn parse_jsonl(text: &str) -> Result<Vec<RawRecord>, CorpusError> {
    let mut out = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let row = out.len() + 1;
        let rec: JsonRecord = serde_json::from_str(line).map_err(|e| CorpusError::Malformed {
            row,
            reason: e.to_string(),
        })?;
        let id = match rec.id {
            None | Some(serde_json::Value::Null) => None,
            Some(serde_json::Value::String(s)) => Some(s),
            Some(serde_json::Value::Number(n)) => Some(n.to_string()),
            Some(other) => {
                return Err(CorpusError::Malformed {
                    row,
                    reason: format!("id must be a string or number, got {other}"),
                })
            }
        };
        out.push(RawRecord {
            row,
            id,
            text: rec.text.ok_or_else(|| CorpusError::Malformed {
                row,
                reason: "missing `text`".into(),
            })?,
            label: rec.label.filter(|s| !s.trim().is_empty()),
        });
    }
    Ok(out)
}

fn finish(raw: Vec<RawRecord>) -> Result<Vec<LabeledDocument>, CorpusError> {
    let mut seen = HashSet::with_capacity(raw.len());
    let mut docs = Vec::with_capacity(raw.len());
    for rec in raw {
        if rec.text.trim().is_empty() {
            return Err(CorpusError::EmptyText { row: rec.row });
        }
        let gold = match rec.label {
            Some(l) => Some(l.parse::<Label>().map_err(|label| CorpusError::UnknownLabel { row: rec.row, label })?),
            None => None,
        };
        let id = rec.id.unwrap_or_else(|| format!("row-{}", rec.row));
        if !seen.insert(id.clone()) {
            return Err(CorpusError::DuplicateId { row: rec.row, id });
        }
        docs.push(LabeledDocument { id, text: rec.text, gold });
    }
    Ok(docs)
}
