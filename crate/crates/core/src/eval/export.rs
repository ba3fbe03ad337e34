//! Report and scored-corpus writers. Output bytes depend only on the inputs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::{ComparisonRow, EvaluationReport, Label, ScoredDocument};
use crate::error::CorpusError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "markdown" | "md" | "markdown-table" => Ok(Self::Markdown),
            other => Err(format!("unknown report format {other:?} (expected json, csv or markdown)")),
        }
    }
}

/// Four decimals, with negative zero printed as `0.0000`.
pub fn format_compound(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

#[derive(Serialize)]
struct RowOut<'a> {
    id: &'a str,
    text: &'a str,
    compound_before: String,
    compound_after: String,
    label_before: Label,
    label_after: Label,
    gold: Option<Label>,
}

impl<'a> From<&'a ComparisonRow> for RowOut<'a> {
    fn from(r: &'a ComparisonRow) -> Self {
        Self {
            id: &r.id,
            text: &r.text,
            compound_before: format_compound(r.compound_before),
            compound_after: format_compound(r.compound_after),
            label_before: r.label_before,
            label_after: r.label_after,
            gold: r.gold,
        }
    }
}

#[derive(Serialize)]
struct JsonExport<'a> {
    report: &'a EvaluationReport,
    rows: Vec<RowOut<'a>>,
}

/// JSON carries the report and the rows; CSV and markdown carry the rows.
pub fn render_report(report: &EvaluationReport, rows: &[ComparisonRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let doc = JsonExport {
                report,
                rows: rows.iter().map(RowOut::from).collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "text", "compound_before", "compound_after", "label_before", "label_after", "gold"])
                .expect("in-memory write");
            for r in rows {
                w.write_record([
                    r.id.as_str(),
                    r.text.as_str(),
                    &format_compound(r.compound_before),
                    &format_compound(r.compound_after),
                    r.label_before.as_str(),
                    r.label_after.as_str(),
                    r.gold.map(Label::as_str).unwrap_or(""),
                ])
                .expect("in-memory write");
            }
            into_string(w)
        }
        ReportFormat::Markdown => {
            let mut s = String::from(
                "| Text | Compound (base) | Compound (augmented) | Label (base) | Label (augmented) | Gold label |\n\
                 |:--|--:|--:|:--|:--|:--|\n",
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} |",
                    markdown_cell(&r.text),
                    format_compound(r.compound_before),
                    format_compound(r.compound_after),
                    r.label_before,
                    r.label_after,
                    r.gold.map(Label::as_str).unwrap_or(""),
                );
            }
            s
        }
    }
}

fn markdown_cell(text: &str) -> String {
    text.replace('|', "\\|").replace(['\r', '\n'], " ")
}

fn into_string(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8 input")
}

pub fn export_report(
    report: &EvaluationReport,
    rows: &[ComparisonRow],
    path: impl AsRef<Path>,
    format: ReportFormat,
) -> Result<(), CorpusError> {
    write(path.as_ref(), &render_report(report, rows, format))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoredFormat {
    Json,
    Jsonl,
    Csv,
}

impl FromStr for ScoredFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "jsonl" | "ndjson" => Ok(Self::Jsonl),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown output format {other:?} (expected json, jsonl or csv)")),
        }
    }
}

#[derive(Serialize)]
struct ScoredOut<'a> {
    id: &'a str,
    text: &'a str,
    negative: f64,
    neutral: f64,
    positive: f64,
    compound: f64,
    label: Label,
    gold: Option<Label>,
}

fn round_to(x: f64, places: i32) -> f64 {
    let scale = 10f64.powi(places);
    let r = (x * scale).round() / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl<'a> From<&'a ScoredDocument> for ScoredOut<'a> {
    fn from(d: &'a ScoredDocument) -> Self {
        Self {
            id: &d.id,
            text: &d.text,
            negative: round_to(d.scores.negative, 3),
            neutral: round_to(d.scores.neutral, 3),
            positive: round_to(d.scores.positive, 3),
            compound: round_to(d.scores.compound, 4),
            label: d.label,
            gold: d.gold,
        }
    }
}

/// Proportions are rounded to three decimals and compounds to four.
pub fn render_scored(docs: &[ScoredDocument], format: ScoredFormat) -> String {
    match format {
        ScoredFormat::Json => {
            let out: Vec<ScoredOut> = docs.iter().map(ScoredOut::from).collect();
            let mut s = serde_json::to_string_pretty(&out).expect("rows serialize");
            s.push('\n');
            s
        }
        ScoredFormat::Jsonl => {
            let mut s = String::new();
            for d in docs {
                s.push_str(&serde_json::to_string(&ScoredOut::from(d)).expect("row serializes"));
                s.push('\n');
            }
            s
        }
        ScoredFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "text", "negative", "neutral", "positive", "compound", "label", "gold"])
                .expect("in-memory write");
            for d in docs {
                let o = ScoredOut::from(d);
                w.write_record([
                    o.id.to_string(),
                    o.text.to_string(),
                    format!("{:.3}", o.negative),
                    format!("{:.3}", o.neutral),
                    format!("{:.3}", o.positive),
                    format_compound(d.scores.compound),
                    o.label.to_string(),
                    o.gold.map(|g| g.to_string()).unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
            into_string(w)
        }
    }
}

pub fn export_scored(docs: &[ScoredDocument], path: impl AsRef<Path>, format: ScoredFormat) -> Result<(), CorpusError> {
    write(path.as_ref(), &render_scored(docs, format))
}

fn write(path: &Path, contents: &str) -> Result<(), CorpusError> {
    fs::write(path, contents).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}
