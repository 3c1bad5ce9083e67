//! Acceptance suite. Each criterion runs in turn and prints one
//! `criterion N: PASS|FAIL` line; the process fails if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triplerank::cooccur::{build_index, build_index_sharded, CountMode};
use triplerank::eval::{
    accuracy, avg_score_diff, kendall_tau, weighted_summary, ConfusionMatrix, EvalRow, TauOptions,
};
use triplerank::facc1::{pass1, pass2, FilterSpec, Preprocessor};
use triplerank::strategies::{abstract_score, count_score, fuse, MentionCandidate};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed <= limit {
        Ok(format!("{:.2?} (limit {limit:?})", elapsed))
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn weighted_summary_consistency() -> Outcome {
    let row = |relation: &str, triples, accuracy, asd, kendall_tau| EvalRow {
        relation: relation.into(),
        triples,
        accuracy,
        asd,
        kendall_tau,
    };
    let rows = [
        row("profession", 513, 0.62, 2.03, 0.34),
        row("nationality", 197, 0.66, 1.82, 0.38),
    ];
    let overall = weighted_summary(&rows).map_err(|e| e.to_string())?;
    ensure!(overall.triples == 710, "triples {}", overall.triples);
    for (name, got, want) in [
        ("accuracy", overall.accuracy, 0.63),
        ("asd", overall.asd, 1.97),
        ("tau", overall.kendall_tau, 0.35),
    ] {
        ensure!(
            (round2(got) - want).abs() <= 0.005,
            "{name}: {got} rounds away from {want}"
        );
    }
    Ok(format!(
        "overall {:.4}/{:.4}/{:.4} over {}",
        overall.accuracy, overall.asd, overall.kendall_tau, overall.triples
    ))
}

fn confusion_consistency() -> Outcome {
    let load = |name: &str| {
        let path = common::mini_dir().join("../confusion").join(name);
        let text =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        ConfusionMatrix::from_tsv(&text, name).map_err(|e| e.to_string())
    };
    let profession = load("profession_full_counts.tsv")?;
    let column0 = profession.column_sums()[0];
    ensure!(column0 == 200, "profession column 0 sums to {column0}");
    ensure!(
        profession.get(0, 0) == 17,
        "profession (0,0) = {}",
        profession.get(0, 0)
    );
    ensure!(
        column0 - profession.get(0, 0) == 183,
        "wrongly zero: {}",
        column0 - 17
    );

    let nationality = load("nationality_full_counts.tsv")?;
    let column7: u64 = (0..8).map(|g| nationality.get(g, 7)).sum();
    ensure!(
        nationality.get(7, 7) == 34,
        "nationality (7,7) = {}",
        nationality.get(7, 7)
    );
    ensure!(
        nationality.column_sums()[7] == column7,
        "column sum mismatch"
    );
    Ok(format!(
        "profession col0={column0} diag=17; nationality (7,7)=34 of column-7 sum {column7} (prose states 35 of 126)"
    ))
}

fn cooccurrence_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for round in 0..500 {
        let corpus = random_corpus(&mut rng, 100, 20, 10);
        let want = oracle_index(&corpus.annotations, &corpus.spec, false);
        let items = corpus.annotations.iter().map(Ok);
        let plain = build_index(items, &corpus.spec, CountMode::Annotation, "x")
            .map_err(|e| e.to_string())?;
        ensure!(
            flatten(&plain) == want,
            "round {round}: unsharded index differs from oracle"
        );
        let shards = rng.gen_range(2..=8);
        let sharded = build_index_sharded(
            &corpus.annotations,
            &corpus.spec,
            CountMode::Annotation,
            shards,
            "x",
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            flatten(&sharded) == want,
            "round {round}: {shards}-shard index differs from oracle"
        );
    }
    within(start.elapsed(), Duration::from_secs(10)).map(|t| format!("500 corpora in {t}"))
}

fn filter_correctness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for round in 0..300 {
        let corpus = random_corpus(&mut rng, 60, 20, 10);
        let spec = &corpus.spec;
        let p1 = pass1(&corpus.annotations, spec);
        ensure!(
            p1 == oracle_pass1(&corpus.annotations, spec),
            "round {round}: pass1 differs"
        );
        ensure!(
            pass1(&p1, spec) == p1,
            "round {round}: pass1 not idempotent"
        );
        let p2 = pass2(&p1, spec).map_err(|e| e.to_string())?;
        ensure!(
            p2 == oracle_pass2(&p1, spec),
            "round {round}: pass2 differs"
        );
        ensure!(
            pass2(&p2, spec).map_err(|e| e.to_string())? == p2,
            "round {round}: pass2 not idempotent"
        );

        let bytes = corpus.to_bytes();
        let expected: Vec<u8> = Synthetic {
            spec: spec.clone(),
            annotations: p2.clone(),
        }
        .to_bytes();
        let pre = Preprocessor::new(spec);
        for shards in [1, 2, 3, 4] {
            let (out, _) = pre
                .run_bytes(&bytes, "corpus", shards)
                .map_err(|e| e.to_string())?;
            ensure!(
                out == expected,
                "round {round}: {shards}-shard preprocess differs"
            );
        }
    }
    within(start.elapsed(), Duration::from_secs(5)).map(|t| format!("300 corpora in {t}"))
}

fn metric_oracles() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let err = |e: triplerank::Error| e.to_string();
    for round in 0..200 {
        let (pred, gold) = random_tables(&mut rng);
        let window = rng.gen_range(0..=3u8);
        let acc = accuracy(&pred, &gold, window).map_err(err)?;
        let asd = avg_score_diff(&pred, &gold).map_err(err)?;
        let tau = kendall_tau(&pred, &gold, TauOptions::default())
            .map_err(err)?
            .tau;
        for (name, got, want) in [
            (
                "accuracy",
                acc,
                oracle_accuracy(&pred, &gold, window as i32),
            ),
            ("asd", asd, oracle_asd(&pred, &gold)),
            ("tau", tau, oracle_mean_tau(&pred, &gold)),
        ] {
            ensure!(
                (got - want).abs() <= 1e-12,
                "round {round}: {name} {got} vs oracle {want}"
            );
        }
    }
    for n in 2..=8u8 {
        let up: Table = (0..n)
            .map(|i| (("p".to_string(), format!("v{i}")), score(i)))
            .collect();
        let down: Table = (0..n)
            .map(|i| (("p".to_string(), format!("v{i}")), score(7 - i)))
            .collect();
        let opts = TauOptions::default();
        ensure!(
            kendall_tau(&up, &up, opts).map_err(err)?.tau == 1.0,
            "identical ranking of {n} is not 1"
        );
        ensure!(
            kendall_tau(&down, &up, opts).map_err(err)?.tau == -1.0,
            "reversed ranking of {n} is not -1"
        );
    }
    within(start.elapsed(), Duration::from_secs(5)).map(|t| format!("200 prediction sets in {t}"))
}

fn strategy_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for round in 0..1000 {
        let counts: BTreeMap<usize, u64> = (0..rng.gen_range(1..=12))
            .map(|k| {
                let c = if rng.gen_bool(0.2) {
                    0
                } else {
                    rng.gen_range(1..=5000)
                };
                (k, c)
            })
            .collect();
        let scores = count_score(&counts);
        let top = counts.values().copied().max().unwrap();
        for (k, &c) in &counts {
            let s = scores[k].get();
            ensure!(c != 0 || s == 0, "round {round}: zero count scored {s}");
            ensure!(
                c != top || top == 0 || s == 7,
                "round {round}: maximum count scored {s}"
            );
            for (k2, &c2) in &counts {
                ensure!(
                    c > c2 || scores[k] <= scores[k2],
                    "round {round}: {c} <= {c2} but {k}:{s} > {k2}"
                );
            }
        }

        let labels = [
            "actor",
            "film actor",
            "singer",
            "dutch",
            "netherlands",
            "writer",
        ];
        let words = [
            "the",
            "an",
            "actor",
            "singers",
            "film",
            "Dutch",
            "Writer",
            "and",
            "netherlands.",
            "singer,",
        ];
        let text: Vec<&str> = (0..rng.gen_range(0..12))
            .map(|_| words[rng.gen_range(0..words.len())])
            .collect();
        let candidates: Vec<MentionCandidate> = labels
            .iter()
            .filter(|_| rng.gen_bool(0.6))
            .map(|l| MentionCandidate::new(*l))
            .collect();
        let awarded = abstract_score(&text.join(" "), &candidates);
        let sevens = awarded.values().filter(|s| s.get() == 7).count();
        let others_zero = awarded.values().all(|s| s.get() == 7 || s.get() == 0);
        ensure!(
            sevens <= 1 && others_zero,
            "round {round}: abstract scores {awarded:?}"
        );
    }

    let mut cases = 0;
    for default in [0, 4] {
        for a in 0..8 {
            for c in 0..8 {
                let got = fuse(score(a), score(c), score(default));
                let want = if a == 0 && c == 0 {
                    (score(default), true)
                } else {
                    (score(a.max(c)), false)
                };
                ensure!(got == want, "fuse({a},{c},{default}) = {got:?}");
                cases += 1;
            }
        }
    }
    Ok(format!(
        "1000 count maps and abstracts, {cases} fusion cases"
    ))
}

fn golden_end_to_end() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = stage_mini(dir.path());
    let start = Instant::now();
    let code = run_cli(&["pipeline", "--config", config.to_str().unwrap()]);
    let elapsed = start.elapsed();
    ensure!(code == 0, "pipeline exited with {code}");
    let expected = mini_dir().join("expected");
    let mut compared = 0;
    for entry in std::fs::read_dir(&expected).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let name = path.file_name().unwrap().to_owned();
        let want = std::fs::read(&path).map_err(|e| e.to_string())?;
        let got = std::fs::read(dir.path().join("out").join(&name))
            .map_err(|e| format!("{}: {e}", name.to_string_lossy()))?;
        ensure!(
            got == want,
            "{} differs from golden",
            name.to_string_lossy()
        );
        compared += 1;
    }
    ensure!(compared == 7, "expected 7 golden files, found {compared}");
    within(elapsed, Duration::from_secs(2)).map(|t| format!("{compared} files byte-identical, {t}"))
}

fn default_sensitivity() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    stage_mini(dir.path());
    let mini = mini_dir();
    // k comes from the independently generated golden predictions.
    let mut k = 0;
    for rel in ["profession", "nationality"] {
        let text = std::fs::read_to_string(mini.join(format!("expected/pred.{rel}.tsv"))).unwrap();
        k += text.lines().filter(|l| l.ends_with("\ttrue")).count();
    }
    ensure!(k > 0, "fixture has no evidence-free triples");

    let p = |rel: &str| dir.path().join(rel);
    let index = mini.join("expected/index.tsv");
    let score_with = |default: &str, out: &str| {
        run_cli(&[
            "score",
            "--kb-dir",
            p("inputs/kb").to_str().unwrap(),
            "--catalog-dir",
            p("inputs/catalog").to_str().unwrap(),
            "--index",
            index.to_str().unwrap(),
            "--abstracts",
            p("inputs/abstracts.tsv").to_str().unwrap(),
            "--default",
            default,
            "--out",
            p(out).to_str().unwrap(),
        ])
    };
    ensure!(score_with("4", "four.tsv") == 0, "score --default 4 failed");
    ensure!(score_with("0", "zero.tsv") == 0, "score --default 0 failed");
    let mut changed = 0;
    let mut total = 0;
    for rel in ["profession", "nationality"] {
        let four = std::fs::read_to_string(p(&format!("four.{rel}.tsv"))).unwrap();
        let zero = std::fs::read_to_string(p(&format!("zero.{rel}.tsv"))).unwrap();
        ensure!(
            four.lines().count() == zero.lines().count(),
            "{rel}: line counts differ"
        );
        for (a, b) in four.lines().zip(zero.lines()) {
            total += 1;
            if a != b {
                changed += 1;
            }
        }
    }
    ensure!(changed == k, "{changed} predictions changed, expected {k}");
    Ok(format!("{changed} of {total} predictions changed, k = {k}"))
}

fn throughput() -> Outcome {
    const LINES: usize = 1_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut spec = FilterSpec::default();
    for n in 0..40 {
        match n % 4 {
            0 => spec.person_ids.insert(mid(n)),
            1 => spec.profession_ids.insert(mid(n)),
            2 => spec.nationality_ids.insert(mid(n)),
            _ => false,
        };
    }
    let mut data = Vec::with_capacity(LINES * 90);
    let mut doc = 0;
    let mut in_doc = 0;
    let mut offset = 0u64;
    for _ in 0..LINES {
        if in_doc == 0 {
            doc += 1;
            in_doc = rng.gen_range(1..=20);
            offset = rng.gen_range(0..500);
        }
        in_doc -= 1;
        let len = rng.gen_range(3..20u64);
        // Most annotations in real corpora are of entities outside the catalog.
        let entity = if rng.gen_bool(0.1) {
            rng.gen_range(0..40)
        } else {
            rng.gen_range(40..100)
        };
        data.extend_from_slice(
            format!(
                "clueweb12-{:04}wb-{:02}-{:05}\tUTF-8\tsome mention\t{offset}\t{}\t0.{:06}\t0.000{:03}\t/m/0e{entity:02}\n",
                doc / 100_000,
                (doc / 1000) % 100,
                doc % 1000,
                offset + len,
                rng.gen_range(0..1_000_000),
                rng.gen_range(0..1000),
            )
            .as_bytes(),
        );
        offset += len + 7;
    }
    let pre = Preprocessor::new(&spec);

    let start = Instant::now();
    let mut sink = Vec::new();
    let report = pre
        .run_stream(&data[..], "synthetic", 1, &mut sink)
        .map_err(|e| e.to_string())?;
    let single = start.elapsed();
    ensure!(
        report.lines_read == LINES as u64,
        "read {} lines",
        report.lines_read
    );

    let start = Instant::now();
    let (sharded, _) = pre
        .run_bytes(&data, "synthetic", 4)
        .map_err(|e| e.to_string())?;
    let four = start.elapsed();
    ensure!(
        sharded == sink,
        "4-shard output differs from the single stream"
    );

    let cores = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let speedup = single.as_secs_f64() / four.as_secs_f64();
    let note = if cores >= 4 {
        ensure!(
            speedup >= 2.0,
            "4-shard speedup only {speedup:.2}x on {cores} cores"
        );
        format!("4 shards {four:.2?} ({speedup:.2}x)")
    } else {
        format!("4 shards {four:.2?} ({speedup:.2}x); speedup not asserted on {cores} core(s)")
    };
    within(single, Duration::from_secs(10))
        .map(|t| format!("1M lines single-threaded in {t}; {note}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("weighted summary consistency", weighted_summary_consistency),
        ("confusion matrix consistency", confusion_consistency),
        ("co-occurrence oracle equivalence", cooccurrence_oracle),
        ("filter correctness", filter_correctness),
        ("metric oracles", metric_oracles),
        ("strategy properties", strategy_properties),
        ("golden end-to-end", golden_end_to_end),
        ("default sensitivity", default_sensitivity),
        ("throughput", throughput),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
