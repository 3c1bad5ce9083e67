mod common;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use common::{mini_dir, stage_mini};

fn triplerank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triplerank"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "preprocess",
        "index",
        "score",
        "evaluate",
        "confusion",
        "sample",
        "verify-ids",
        "stats",
        "pipeline",
    ] {
        let out = triplerank(&[sub, "--help"]);
        assert!(out.status.success(), "{sub} --help failed");
        assert!(
            String::from_utf8_lossy(&out.stdout).contains("Usage"),
            "{sub}"
        );
    }
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(
        triplerank(&["score", "--no-such-flag"]).status.code(),
        Some(1)
    );
    assert_eq!(triplerank(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn nonexistent_input_is_rejected_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let out = triplerank(&["stats", "--in", s(&dir.path().join("absent.tsv"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("absent.tsv"));
}

#[test]
fn malformed_corpus_aborts_with_line_number_by_default() {
    let dir = tempfile::tempdir().unwrap();
    stage_mini(dir.path());
    let out = triplerank(&[
        "preprocess",
        "--catalog-dir",
        s(&dir.path().join("inputs/catalog")),
        "--in",
        s(&dir.path().join("inputs/corpus.tsv")),
        "--out",
        s(&dir.path().join("filtered.tsv")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":98"));
}

#[test]
fn evaluate_against_itself_is_perfect() {
    let gold = mini_dir().join("inputs/kb/gold.tsv");
    let out = triplerank(&[
        "evaluate",
        "--pred",
        s(&gold),
        "--gold",
        s(&gold),
        "--relation",
        "profession",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().find(|l| l.starts_with("profession")).unwrap();
    let fields: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(&fields[2..], ["1.00", "0.00", "1.00"], "{text}");
}

#[test]
fn staged_commands_reproduce_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    stage_mini(dir.path());
    let p = |rel: &str| dir.path().join(rel);
    let expected = mini_dir().join("expected");

    // Gzipped input, skipped malformed line, four shards.
    let gz = p("corpus.tsv.gz");
    let mut enc =
        flate2::write::GzEncoder::new(fs::File::create(&gz).unwrap(), flate2::Compression::fast());
    enc.write_all(&fs::read(p("inputs/corpus.tsv")).unwrap())
        .unwrap();
    enc.finish().unwrap();
    let catalog = p("inputs/catalog");
    let status = triplerank(&[
        "preprocess",
        "--catalog-dir",
        s(&catalog),
        "--in",
        s(&gz),
        "--out",
        s(&p("filtered.tsv")),
        "--on-parse-error",
        "skip",
        "--shards",
        "4",
    ]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    assert_eq!(
        fs::read(p("filtered.tsv")).unwrap(),
        fs::read(expected.join("filtered.tsv")).unwrap()
    );

    let status = triplerank(&[
        "index",
        "--catalog-dir",
        s(&catalog),
        "--in",
        s(&p("filtered.tsv")),
        "--out",
        s(&p("index.tsv")),
        "--shards",
        "3",
    ]);
    assert!(status.status.success());
    assert_eq!(
        fs::read(p("index.tsv")).unwrap(),
        fs::read(expected.join("index.tsv")).unwrap()
    );

    let status = triplerank(&[
        "score",
        "--kb-dir",
        s(&p("inputs/kb")),
        "--catalog-dir",
        s(&catalog),
        "--index",
        s(&p("index.tsv")),
        "--abstracts",
        s(&p("inputs/abstracts.tsv")),
        "--out",
        s(&p("pred.tsv")),
        "--provenance",
    ]);
    assert!(status.status.success());
    for rel in ["profession", "nationality"] {
        let name = format!("pred.{rel}.tsv");
        assert_eq!(
            fs::read(p(&name)).unwrap(),
            fs::read(expected.join(&name)).unwrap(),
            "{name}"
        );
    }

    // evaluate applies the relation infix to both files and requires identical
    // keys, so split the gold per relation and keep only judged predictions.
    let gold = fs::read_to_string(p("inputs/kb/gold.tsv")).unwrap();
    let key = |l: &str| l.split('\t').take(2).collect::<Vec<_>>().join("\t");
    let judged: std::collections::HashSet<String> = gold.lines().map(key).collect();
    for rel in ["profession", "nationality"] {
        let pred = fs::read_to_string(p(&format!("pred.{rel}.tsv"))).unwrap();
        let kept: Vec<&str> = pred.lines().filter(|l| judged.contains(&key(l))).collect();
        let keys: std::collections::HashSet<String> = kept.iter().map(|l| key(l)).collect();
        let subset: String = gold
            .lines()
            .filter(|l| keys.contains(&key(l)))
            .map(|l| format!("{l}\n"))
            .collect();
        fs::write(p(&format!("gold.{rel}.tsv")), subset).unwrap();
        fs::write(
            p(&format!("judged.{rel}.tsv")),
            kept.iter().map(|l| format!("{l}\n")).collect::<String>(),
        )
        .unwrap();
    }
    let out = triplerank(&[
        "evaluate",
        "--pred",
        s(&p("judged.tsv")),
        "--gold",
        s(&p("gold.tsv")),
        "--format",
        "tsv",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(out.stdout, fs::read(expected.join("eval.tsv")).unwrap());

    let out = triplerank(&[
        "confusion",
        "--pred",
        s(&p("judged.tsv")),
        "--gold",
        s(&p("gold.tsv")),
        "--out",
        s(&p("cm.tsv")),
    ]);
    assert!(out.status.success());
    for rel in ["profession", "nationality"] {
        assert_eq!(
            fs::read(p(&format!("cm.{rel}.tsv"))).unwrap(),
            fs::read(expected.join(format!("confusion.{rel}.tsv"))).unwrap()
        );
    }
}

#[test]
fn verify_ids_flags_absent_entities() {
    let dir = tempfile::tempdir().unwrap();
    stage_mini(dir.path());
    let out = triplerank(&[
        "verify-ids",
        "--catalog-dir",
        s(&dir.path().join("inputs/catalog")),
        "--in",
        s(&dir.path().join("inputs/corpus.tsv")),
        "--on-parse-error",
        "skip",
    ]);
    assert!(out.status.success());
    let report = String::from_utf8(out.stdout).unwrap();
    let france = report.lines().find(|l| l.contains("\tFrance\t")).unwrap();
    assert!(france.ends_with("\t0\tmissing"), "{france}");
    let olga = report.lines().find(|l| l.contains("Olga Fischer")).unwrap();
    assert!(olga.ends_with("missing"), "{olga}");
    assert!(report.lines().filter(|l| l.ends_with("\tok")).count() > 10);
}

#[test]
fn sample_and_stats_agree_on_document_count() {
    let dir = tempfile::tempdir().unwrap();
    let filtered = mini_dir().join("expected/filtered.tsv");
    let sample = dir.path().join("sample.tsv");
    let out = triplerank(&[
        "sample",
        "--in",
        s(&filtered),
        "--out",
        s(&sample),
        "--docs",
        "5",
        "--seed",
        "11",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&sample).unwrap();
    let docs: std::collections::BTreeSet<&str> = text
        .lines()
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(docs.len(), 5);

    let stats = triplerank(&["stats", "--in", s(&sample)]);
    assert!(stats.status.success());
    let report = String::from_utf8(stats.stdout).unwrap();
    assert!(
        report.contains(&format!("{}", text.lines().count())),
        "{report}"
    );
}

#[test]
fn bad_config_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = stage_mini(dir.path());
    let text = fs::read_to_string(&config)
        .unwrap()
        .replace("default = 4", "default = 9");
    fs::write(&config, text).unwrap();
    assert_eq!(
        triplerank(&["pipeline", "--config", s(&config)])
            .status
            .code(),
        Some(1)
    );
}
