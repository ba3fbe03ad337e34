//! `pidgin-sentiment`: score text, derive and merge lexicons, and compare a
//! base lexicon against an augmented one over a labeled corpus.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage, 3 parse failure,
//! 4 unresolved English token, 5 policy violation.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pidgin_sentiment::derive::{derive_all, parse_mapping_file};
use pidgin_sentiment::engine::{ConfigError, EngineConfig};
use pidgin_sentiment::eval::{
    agreement, compare_lexicons, evaluate, load_corpus, render_report, render_scored, score_corpus, AgreementMetrics,
    CorpusFormat, LabeledDocument, ReportFormat, ScoredFormat, Thresholds,
};
use pidgin_sentiment::lexicon::{collisions, merge, Lexicon, MergePolicy, ParseMode};
use pidgin_sentiment::{polarity_scores, CorpusError, DeriveError, LexiconError};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "pidgin-sentiment", version, about = "Lexicon-based sentiment scoring for Nigerian Pidgin / English text")]
struct Cli {
    /// How lexicon files are parsed: `strict` rejects duplicate tokens and
    /// inconsistent ratings; `compat` resolves them (needed for the
    /// reference English lexicon as distributed).
    #[arg(long, global = true, default_value = "strict", value_name = "MODE")]
    lexicon_mode: ParseMode,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score one text and print the scores as JSON.
    Score {
        /// Text to score.
        #[arg(long, allow_hyphen_values = true)]
        text: String,
        /// Lexicon file (token, mean valence, optional dispersion and ratings).
        #[arg(long)]
        lexicon: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Score every document of a corpus and write the scored rows.
    Batch {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Lexicon file.
        #[arg(long)]
        lexicon: PathBuf,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
        /// Output format: json, jsonl or csv.
        #[arg(long, default_value = "json")]
        format: ScoredFormat,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
    },
    /// Build an augmentation lexicon by averaging the valences of each
    /// token's English meanings.
    LexiconDerive {
        /// Mapping file: `token<TAB>meaning1,meaning2,...[<TAB>claimed average]`.
        #[arg(long)]
        mapping: PathBuf,
        /// Lexicon the English meanings are looked up in.
        #[arg(long)]
        source_lexicon: PathBuf,
        /// Output lexicon file.
        #[arg(long)]
        out: PathBuf,
        /// Abort (exit 5) instead of warning when a token's meanings disagree in sign.
        #[arg(long)]
        strict_sign: bool,
    },
    /// Merge an augmentation lexicon into a base lexicon.
    LexiconMerge {
        /// Base lexicon file.
        #[arg(long)]
        base: PathBuf,
        /// Augmentation lexicon file.
        #[arg(long)]
        augmentation: PathBuf,
        /// Collision policy: override, keep-base or error-on-conflict.
        #[arg(long, default_value = "override")]
        policy: MergePolicy,
        /// Output lexicon file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a corpus with one lexicon and report agreement with the gold labels.
    Eval {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Lexicon file.
        #[arg(long)]
        lexicon: PathBuf,
        /// Write the JSON agreement report here as well as printing a summary.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
    },
    /// Score a corpus with a base and an augmented lexicon and report label
    /// changes and agreement with the gold labels.
    Compare {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Base lexicon file.
        #[arg(long)]
        base: PathBuf,
        /// Augmented lexicon file.
        #[arg(long)]
        augmented: PathBuf,
        /// Row export file.
        #[arg(long)]
        out: PathBuf,
        /// Row export format: json (rows and report), csv or markdown.
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        /// Also write the JSON evaluation report (without rows) here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
    },
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file with `text` and optional `id` and `label` columns.
    #[arg(long)]
    corpus: PathBuf,
    /// Corpus format: csv, tsv or jsonl (default: from the file extension).
    #[arg(long)]
    corpus_format: Option<CorpusFormat>,
}

#[derive(Args)]
struct EngineArgs {
    /// `key = value` file overriding engine constants.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Positive and negative compound cut-offs, e.g. `0.05,-0.05`.
    #[arg(long, default_value = "0.05,-0.05", value_parser = parse_thresholds, allow_hyphen_values = true)]
    thresholds: Thresholds,
}

fn parse_thresholds(s: &str) -> Result<Thresholds, String> {
    let (pos, neg) = s
        .split_once(',')
        .ok_or_else(|| format!("expected POSITIVE,NEGATIVE, got {s:?}"))?;
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Thresholds::new(num(pos)?, num(neg)?)
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

const IO: u8 = 1;
const USAGE: u8 = 2;
const PARSE: u8 = 3;
const UNRESOLVED: u8 = 4;
const POLICY: u8 = 5;

impl From<LexiconError> for Failure {
    fn from(e: LexiconError) -> Self {
        let code = match e {
            LexiconError::Io { .. } => IO,
            LexiconError::MergeConflict(_) => POLICY,
            _ => PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<DeriveError> for Failure {
    fn from(e: DeriveError) -> Self {
        match e {
            DeriveError::Lexicon(e) => e.into(),
            DeriveError::Io { .. } => Failure::new(IO, e.to_string()),
            DeriveError::Unresolved(_) => Failure::new(UNRESOLVED, e.to_string()),
            DeriveError::MixedSign(_) => Failure::new(POLICY, e.to_string()),
            _ => Failure::new(PARSE, e.to_string()),
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        let code = match e {
            CorpusError::Io { .. } => IO,
            CorpusError::UnknownFormat(_) => USAGE,
            _ => PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        let code = if matches!(e, ConfigError::Io { .. }) { IO } else { PARSE };
        Failure::new(code, format!("config: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mode = cli.lexicon_mode;
    match cli.command {
        Command::Score { text, lexicon, engine } => {
            let lexicon = read_lexicon(&lexicon, mode)?;
            let cfg = engine.load()?;
            let scores = polarity_scores(&text, &lexicon, &cfg);
            println!("{}", serde_json::to_string(&scores).expect("scores serialize"));
            Ok(())
        }
        Command::Batch {
            corpus,
            lexicon,
            out,
            format,
            engine,
            thresholds,
        } => {
            let docs = corpus.load()?;
            let lexicon = read_lexicon(&lexicon, mode)?;
            let cfg = engine.load()?;
            let scored = score_corpus(&docs, &lexicon, &cfg, thresholds.thresholds);
            write_outputs(&[(&out, render_scored(&scored, format))])
        }
        Command::LexiconDerive {
            mapping,
            source_lexicon,
            out,
            strict_sign,
        } => {
            let mapping = parse_mapping_file(&mapping)?;
            let source = read_lexicon(&source_lexicon, mode)?;
            let derivation = derive_all(&mapping, &source)?;
            for w in &derivation.warnings {
                eprintln!("warning: {w}");
            }
            let mixed = derivation.mixed_sign_tokens();
            if strict_sign && !mixed.is_empty() {
                let mixed = mixed.into_iter().map(str::to_string).collect();
                return Err(DeriveError::MixedSign(mixed).into());
            }
            let lexicon = derivation.to_lexicon(stem(&out));
            write_outputs(&[(&out, lexicon.to_tsv())])?;
            let mut table = String::new();
            for r in &derivation.records {
                let _ = writeln!(table, "{}\t{:.4}\t{}", r.pidgin_token, r.derived_valence, r.display_valence());
            }
            print!("{table}");
            Ok(())
        }
        Command::LexiconMerge {
            base,
            augmentation,
            policy,
            out,
        } => {
            let base = read_lexicon(&base, mode)?;
            let augmentation = read_lexicon(&augmentation, mode)?;
            let clashes = collisions(&base, &augmentation);
            eprintln!("collisions: {}", clashes.len());
            for t in &clashes {
                eprintln!("  {t}");
            }
            if policy == MergePolicy::ErrorOnConflict && !clashes.is_empty() {
                return Err(Failure::new(
                    POLICY,
                    format!("merge conflict on {} token(s): {}", clashes.len(), clashes.join(", ")),
                ));
            }
            let merged = merge(&base, &augmentation, policy)?;
            write_outputs(&[(&out, merged.to_tsv())])
        }
        Command::Eval {
            corpus,
            lexicon,
            out,
            engine,
            thresholds,
        } => {
            let docs = corpus.load()?;
            let lexicon = read_lexicon(&lexicon, mode)?;
            let cfg = engine.load()?;
            let scored = score_corpus(&docs, &lexicon, &cfg, thresholds.thresholds);
            let report = EvalReport {
                corpus_size: scored.len(),
                gold_labeled: scored.iter().filter(|d| d.gold.is_some()).count(),
                agreement: agreement(&scored),
            };
            if let Some(out) = &out {
                write_outputs(&[(out, to_json(&report))])?;
            }
            print!("{}", report.summary());
            Ok(())
        }
        Command::Compare {
            corpus,
            base,
            augmented,
            out,
            format,
            report,
            engine,
            thresholds,
        } => {
            let docs = corpus.load()?;
            let base = read_lexicon(&base, mode)?;
            let augmented = read_lexicon(&augmented, mode)?;
            let cfg = engine.load()?;
            let rows = compare_lexicons(&docs, &base, &augmented, &cfg, thresholds.thresholds);
            let evaluation = evaluate(&rows);
            let mut outputs = vec![(out.as_path(), render_report(&evaluation, &rows, format))];
            if let Some(path) = &report {
                outputs.push((path.as_path(), to_json(&evaluation)));
            }
            write_outputs(&outputs)?;
            let mut summary = format!("documents: {}\ngold-labeled: {}\n", evaluation.corpus_size, evaluation.gold_labeled);
            if let (Some(b), Some(a)) = (&evaluation.before, &evaluation.after) {
                let _ = writeln!(summary, "accuracy (base): {:.4}", b.accuracy);
                let _ = writeln!(summary, "accuracy (augmented): {:.4}", a.accuracy);
            }
            let _ = writeln!(summary, "flips: {}", evaluation.flips.total_flips());
            for t in evaluation.flips.transitions().iter().filter(|t| t.from != t.to && t.count > 0) {
                let _ = writeln!(summary, "  {} -> {}: {}", t.from, t.to, t.count);
            }
            print!("{summary}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct EvalReport {
    corpus_size: usize,
    gold_labeled: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    agreement: Option<AgreementMetrics>,
}

impl EvalReport {
    fn summary(&self) -> String {
        let mut s = format!("documents: {}\ngold-labeled: {}\n", self.corpus_size, self.gold_labeled);
        if let Some(a) = &self.agreement {
            let _ = writeln!(s, "accuracy: {:.4}", a.accuracy);
            let _ = writeln!(s, "macro-f1: {:.4}", a.macro_f1);
            for c in &a.per_class {
                let _ = writeln!(
                    s,
                    "  {}: precision {:.4} recall {:.4} f1 {:.4} (support {})",
                    c.label, c.precision, c.recall, c.f1, c.support
                );
            }
        }
        s
    }
}

impl CorpusArgs {
    fn load(&self) -> Result<Vec<LabeledDocument>, Failure> {
        let format = match self.corpus_format {
            Some(f) => f,
            None => CorpusFormat::from_path(&self.corpus).ok_or_else(|| {
                Failure::new(
                    USAGE,
                    format!(
                        "cannot infer the corpus format of {}; pass --corpus-format",
                        self.corpus.display()
                    ),
                )
            })?,
        };
        Ok(load_corpus(&self.corpus, format)?)
    }
}

impl EngineArgs {
    fn load(&self) -> Result<EngineConfig, Failure> {
        match &self.config {
            Some(path) => Ok(EngineConfig::from_file(path)?),
            None => Ok(EngineConfig::default()),
        }
    }
}

fn read_lexicon(path: &Path, mode: ParseMode) -> Result<Lexicon, Failure> {
    let parsed = Lexicon::parse_file_with(path, mode)?;
    if !parsed.warnings.is_empty() {
        eprintln!(
            "note: {}: {} inconsistent line(s) resolved in compat mode",
            path.display(),
            parsed.warnings.len()
        );
    }
    Ok(parsed.lexicon)
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Writes every output through a temporary file in the destination
/// directory. Either all outputs land or none do.
fn write_outputs(outputs: &[(&Path, String)]) -> Result<(), Failure> {
    let io_err = |path: &Path, e: std::io::Error| Failure::new(IO, format!("failed to write {}: {e}", path.display()));
    let mut staged = Vec::with_capacity(outputs.len());
    for (path, contents) in outputs {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
        tmp.write_all(contents.as_bytes()).map_err(|e| io_err(path, e))?;
        tmp.as_file().sync_all().map_err(|e| io_err(path, e))?;
        staged.push((*path, tmp));
    }
    let mut written: Vec<&Path> = Vec::new();
    for (path, tmp) in staged {
        if let Err(e) = tmp.persist(path) {
            for done in written {
                let _ = std::fs::remove_file(done);
            }
            return Err(io_err(path, e.error));
        }
        written.push(path);
    }
    Ok(())
}
