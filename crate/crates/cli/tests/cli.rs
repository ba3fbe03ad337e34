use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_pidgin-sentiment");

fn core(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn reference() -> String {
    core("assets/vader_lexicon.txt")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn put(dir: &TempDir, name: &str, contents: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

const SMALL_BASE: &str = "bad\t-2.5\t0.0\t[]\ngood\t1.9\t0.0\t[]\ntank\t-0.3\t0.0\t[]\n";

#[test]
fn help_documents_every_flag() {
    let cases: &[(&str, &[&str])] = &[
        ("score", &["--text", "--lexicon", "--config", "--lexicon-mode"]),
        ("batch", &["--corpus", "--corpus-format", "--lexicon", "--out", "--format", "--thresholds", "--config"]),
        ("lexicon-derive", &["--mapping", "--source-lexicon", "--out", "--strict-sign"]),
        ("lexicon-merge", &["--base", "--augmentation", "--policy", "--out"]),
        ("eval", &["--corpus", "--lexicon", "--out", "--thresholds"]),
        ("compare", &["--corpus", "--base", "--augmented", "--out", "--format", "--report", "--thresholds"]),
    ];
    for (sub, flags) in cases {
        let o = run(&[sub, "--help"]);
        assert_eq!(code(&o), 0, "{sub}");
        let text = stdout(&o);
        for f in *flags {
            assert!(text.contains(f), "{sub} --help lacks {f}");
        }
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn usage_errors_exit_2() {
    let o = run(&["score", "--text", "x"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--lexicon"));
    assert_eq!(code(&run(&["score", "--text", "x", "--lexicon", "l", "--bogus"])), 2);
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn score_prints_json() {
    let o = run(&["score", "--text", "Na to delete am", "--lexicon", &reference(), "--lexicon-mode", "compat"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["compound"], 0.0);
    assert_eq!(v["neutral"], 1.0);

    let o = run(&["score", "--text", "", "--lexicon", &reference(), "--lexicon-mode", "compat"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for k in ["negative", "neutral", "positive", "compound"] {
        assert_eq!(v[k], 0.0, "{k}");
    }
}

#[test]
fn score_applies_config_overrides() {
    let dir = TempDir::new().unwrap();
    let lex = put(&dir, "l.txt", SMALL_BASE);
    let cfg = put(&dir, "c.conf", "# sharper curve\nalpha = 1\n");
    let o = run(&["score", "--text", "good", "--lexicon", &lex, "--config", &cfg]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = 1.9 / (1.9f64 * 1.9 + 1.0).sqrt();
    assert!((v["compound"].as_f64().unwrap() - expected).abs() < 1e-12);

    let bad = put(&dir, "bad.conf", "alpha = 1\nbeta = 2\n");
    let o = run(&["score", "--text", "good", "--lexicon", &lex, "--config", &bad]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("beta"));
}

#[test]
fn lexicon_parse_failure_exits_3() {
    let o = run(&["score", "--text", "x", "--lexicon", &reference()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("duplicate token"));
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "bad.txt", "good\tnot-a-number\n");
    assert_eq!(code(&run(&["score", "--text", "x", "--lexicon", &bad])), 3);
}

#[test]
fn missing_input_file_exits_1() {
    let o = run(&["score", "--text", "x", "--lexicon", "/nonexistent/lexicon.txt"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn batch_reproduces_showcase_before_scores() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "scored.csv");
    let o = run(&[
        "batch", "--corpus", &core("tests/fixtures/showcase.csv"), "--lexicon", &reference(),
        "--lexicon-mode", "compat", "--out", &out, "--format", "csv",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut r = csv::Reader::from_path(&out).unwrap();
    let compounds: Vec<String> = r.records().map(|rec| rec.unwrap()[5].to_string()).collect();
    assert_eq!(compounds, ["-0.1154", "0.0000", "0.0000", "0.0000", "0.0000", "0.2960", "0.3400"]);
}

#[test]
fn batch_formats_and_empty_corpus() {
    let dir = TempDir::new().unwrap();
    let lex = put(&dir, "l.txt", SMALL_BASE);
    let empty = put(&dir, "empty.csv", "id,text,label\n");
    let out = path(&dir, "out.csv");
    assert_eq!(code(&run(&["batch", "--corpus", &empty, "--lexicon", &lex, "--out", &out, "--format", "csv"])), 0);
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 1);

    let corpus = put(&dir, "c.jsonl", "{\"id\": 1, \"text\": \"good\"}\n{\"text\": \"bad\", \"label\": \"negative\"}\n");
    let out = path(&dir, "out.jsonl");
    assert_eq!(code(&run(&["batch", "--corpus", &corpus, "--lexicon", &lex, "--out", &out, "--format", "jsonl"])), 0);
    let lines: Vec<serde_json::Value> = fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["id"], "1");
    assert_eq!(lines[0]["label"], "positive");
    assert_eq!(lines[1]["gold"], "negative");
}

#[test]
fn batch_malformed_row_exits_3_without_output() {
    let dir = TempDir::new().unwrap();
    let lex = put(&dir, "l.txt", SMALL_BASE);
    let corpus = put(&dir, "c.csv", "text,label\ngood,positive\nbad,furious\n");
    let out = path(&dir, "out.json");
    let o = run(&["batch", "--corpus", &corpus, "--lexicon", &lex, "--out", &out]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("row 2"), "{}", stderr(&o));
    assert!(!Path::new(&out).exists());
}

#[test]
fn batch_needs_known_corpus_format() {
    let dir = TempDir::new().unwrap();
    let lex = put(&dir, "l.txt", SMALL_BASE);
    let corpus = put(&dir, "c.dat", "text\ngood\n");
    let out = path(&dir, "out.json");
    assert_eq!(code(&run(&["batch", "--corpus", &corpus, "--lexicon", &lex, "--out", &out])), 2);
    let o = run(&["batch", "--corpus", &corpus, "--corpus-format", "csv", "--lexicon", &lex, "--out", &out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn derive_para_row() {
    let dir = TempDir::new().unwrap();
    let mapping = put(&dir, "m.tsv", "para\tangry,annoyed,rage\n");
    let out = path(&dir, "aug.txt");
    let o = run(&[
        "lexicon-derive", "--mapping", &mapping, "--source-lexicon", &reference(), "--lexicon-mode", "compat",
        "--out", &out,
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "para\t-2.1667\t-2.2\n");
    let lex = pidgin_sentiment::Lexicon::parse_file(&out).unwrap();
    assert_eq!(format!("{:.4}", lex.valence("para").unwrap()), "-2.1667");
}

#[test]
fn derive_empty_mapping_gives_empty_lexicon() {
    let dir = TempDir::new().unwrap();
    let mapping = put(&dir, "m.tsv", "");
    let src = put(&dir, "l.txt", SMALL_BASE);
    let out = path(&dir, "aug.txt");
    let o = run(&["lexicon-derive", "--mapping", &mapping, "--source-lexicon", &src, "--out", &out]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), "");
}

#[test]
fn derive_unresolved_exits_4_naming_tokens() {
    let dir = TempDir::new().unwrap();
    let mapping = put(&dir, "m.tsv", "wahala\tgood,zzmissing\nyawa\tbad,qqabsent\n");
    let src = put(&dir, "l.txt", SMALL_BASE);
    let out = path(&dir, "aug.txt");
    let o = run(&["lexicon-derive", "--mapping", &mapping, "--source-lexicon", &src, "--out", &out]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("zzmissing") && stderr(&o).contains("qqabsent"));
    assert!(!Path::new(&out).exists());
}

#[test]
fn derive_sign_policy() {
    let dir = TempDir::new().unwrap();
    let mapping = core("tests/fixtures/derivation_printed.tsv");
    let src = put(&dir, "l.txt", SMALL_BASE);
    let out = path(&dir, "aug.txt");
    let o = run(&["lexicon-derive", "--mapping", &mapping, "--source-lexicon", &src, "--out", &out]);
    assert_eq!(code(&o), 0);
    let err = stderr(&o);
    assert!(err.contains("gbege: sources disagree in sign"), "{err}");
    assert!(err.contains("kasala: published average -2.2"), "{err}");
    fs::remove_file(&out).unwrap();

    let o = run(&["lexicon-derive", "--mapping", &mapping, "--source-lexicon", &src, "--out", &out, "--strict-sign"]);
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("gbege"));
    assert!(!Path::new(&out).exists());
}

#[test]
fn derive_malformed_mapping_exits_3() {
    let dir = TempDir::new().unwrap();
    let mapping = put(&dir, "m.tsv", "only-one-column\n");
    let src = put(&dir, "l.txt", SMALL_BASE);
    let out = path(&dir, "aug.txt");
    assert_eq!(code(&run(&["lexicon-derive", "--mapping", &mapping, "--source-lexicon", &src, "--out", &out])), 3);
}

#[test]
fn merge_policies() {
    let dir = TempDir::new().unwrap();
    let base = put(&dir, "base.txt", SMALL_BASE);
    let aug = put(&dir, "aug.txt", "tank\t2.5\t0.0\t[]\nwahala\t-2.0\t0.0\t[]\n");
    let out = path(&dir, "merged.txt");

    let o = run(&["lexicon-merge", "--base", &base, "--augmentation", &aug, "--policy", "error-on-conflict", "--out", &out]);
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("tank"));
    assert!(!Path::new(&out).exists());

    let o = run(&["lexicon-merge", "--base", &base, "--augmentation", &aug, "--out", &out]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("collisions: 1") && stderr(&o).contains("tank"));
    let merged = pidgin_sentiment::Lexicon::parse_file(&out).unwrap();
    assert_eq!(merged.len(), 4);
    assert_eq!(merged.valence("tank"), Some(2.5));

    let o = run(&["lexicon-merge", "--base", &base, "--augmentation", &aug, "--policy", "keep-base", "--out", &out]);
    assert_eq!(code(&o), 0);
    assert_eq!(pidgin_sentiment::Lexicon::parse_file(&out).unwrap().valence("tank"), Some(-0.3));

    assert_eq!(code(&run(&["lexicon-merge", "--base", &base, "--augmentation", &aug, "--policy", "nope", "--out", &out])), 2);
}

#[test]
fn merge_with_empty_augmentation_round_trips() {
    let dir = TempDir::new().unwrap();
    let base = put(&dir, "base.txt", SMALL_BASE);
    let empty = put(&dir, "empty.txt", "");
    let out = path(&dir, "merged.txt");
    assert_eq!(code(&run(&["lexicon-merge", "--base", &base, "--augmentation", &empty, "--out", &out])), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), SMALL_BASE);
}

#[test]
fn compare_identity_has_no_flips() {
    let dir = TempDir::new().unwrap();
    let lex = put(&dir, "l.txt", SMALL_BASE);
    let corpus = put(&dir, "c.csv", "text,label\ngood day,positive\nbad tank,negative\nnothing,neutral\n");
    let out = path(&dir, "rows.json");
    let o = run(&["compare", "--corpus", &corpus, "--base", &lex, "--augmented", &lex, "--out", &out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("flips: 0"));
    assert!(stdout(&o).contains("accuracy (base): 1.0000"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["report"]["flips"]["total_flips"], 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn compare_thresholds_sweep() {
    let dir = TempDir::new().unwrap();
    let aug = put(&dir, "aug.txt", "beta\t2.3\t0.0\t[]\n");
    let merged = path(&dir, "merged.txt");
    let o = run(&[
        "lexicon-merge", "--base", &reference(), "--augmentation", &aug, "--lexicon-mode", "compat", "--out", &merged,
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for thresholds in ["0.05,-0.05", "0.5,-0.5"] {
        let out = path(&dir, "rows.csv");
        let report = path(&dir, "report.json");
        let o = run(&[
            "compare", "--corpus", &core("tests/fixtures/showcase.csv"), "--base", &reference(), "--augmented", &merged,
            "--lexicon-mode", "compat", "--out", &out, "--format", "csv", "--report", &report,
            "--thresholds", thresholds,
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let mut r = csv::Reader::from_path(&out).unwrap();
        let row4 = r.records().nth(3).unwrap().unwrap();
        assert!(row4[1].starts_with("39’ willian try make beta pass"));
        assert_eq!(&row4[3], "0.5106");
        assert_eq!(&row4[5], "positive", "at {thresholds}");
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
        assert_eq!(v["corpus_size"], 7);
    }
    // between the two: only the "beta" row crosses 0.5
    let o = run(&[
        "compare", "--corpus", &core("tests/fixtures/showcase.csv"), "--base", &reference(), "--augmented", &merged,
        "--lexicon-mode", "compat", "--out", &path(&dir, "rows.md"), "--format", "markdown", "--thresholds", "0.6,-0.6",
    ]);
    assert_eq!(code(&o), 0);
    let md = fs::read_to_string(dir.path().join("rows.md")).unwrap();
    assert!(md.contains("| 39’ willian try make beta pass, na beg we dey. | 0.0000 | 0.5106 | neutral | neutral | positive |"));
}

#[test]
fn compare_rejects_inverted_thresholds() {
    let dir = TempDir::new().unwrap();
    let lex = put(&dir, "l.txt", SMALL_BASE);
    let corpus = put(&dir, "c.csv", "text\ngood\n");
    let out = path(&dir, "rows.json");
    let o = run(&["compare", "--corpus", &corpus, "--base", &lex, "--augmented", &lex, "--out", &out, "--thresholds", "-0.5,0.5"]);
    assert_eq!(code(&o), 2);
    assert!(!Path::new(&out).exists());
}

#[test]
fn eval_reports_agreement() {
    let dir = TempDir::new().unwrap();
    let lex = put(&dir, "l.txt", SMALL_BASE);
    let corpus = put(&dir, "c.tsv", "text\tlabel\ngood\tpositive\nbad\tpositive\nplain\tneutral\nunlabeled\t\n");
    let out = path(&dir, "eval.json");
    let o = run(&["eval", "--corpus", &corpus, "--lexicon", &lex, "--out", &out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("gold-labeled: 3"));
    assert!(stdout(&o).contains("accuracy: 0.6667"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["corpus_size"], 4);
    assert_eq!(v["agreement"]["confusion"]["counts"][2][0], 1);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let lex = put(&dir, "l.txt", SMALL_BASE);
    let corpus = put(
        &dir,
        "c.csv",
        "id,text,label\na,good good GOOD!!,positive\nb,\"not bad, but tank\",negative\nc,\"pipe | here\",\n",
    );
    for format in ["json", "csv", "markdown"] {
        let mut outputs = Vec::new();
        for i in 0..2 {
            let out = path(&dir, &format!("{format}{i}"));
            let o = run(&["compare", "--corpus", &corpus, "--base", &lex, "--augmented", &lex, "--out", &out, "--format", format]);
            assert_eq!(code(&o), 0);
            outputs.push(fs::read(&out).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{format}");
    }
}
