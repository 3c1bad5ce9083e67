//! Random corpus generators and brute-force reference implementations shared
//! by the integration tests. Nothing here calls into the library's own
//! filtering, counting or metric code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::{Path, PathBuf};

use rand::Rng;
use triplerank::facc1::{Annotation, FilterSpec, Separator};
use triplerank::model::{EntityId, Score};

pub fn mid(n: usize) -> EntityId {
    EntityId::new(format!("/m/0e{n:02}")).unwrap()
}

/// A corpus plus the role of each of its entities.
#[derive(Debug, Clone)]
pub struct Synthetic {
    pub spec: FilterSpec,
    pub annotations: Vec<Annotation>,
}

impl Synthetic {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for a in &self.annotations {
            out.extend_from_slice(a.to_line(Separator::Tab).as_bytes());
            out.push(b'\n');
        }
        out
    }
}

/// Up to `max_docs` documents over up to `max_entities` entities, each
/// document holding 1..=`max_per_doc` annotations; documents are contiguous.
pub fn random_corpus<R: Rng>(
    rng: &mut R,
    max_docs: usize,
    max_entities: usize,
    max_per_doc: usize,
) -> Synthetic {
    let entities = rng.gen_range(1..=max_entities);
    let mut spec = FilterSpec::default();
    for n in 0..entities {
        // Roughly a third persons, a third values, the rest noise.
        match rng.gen_range(0..6) {
            0 | 1 => spec.person_ids.insert(mid(n)),
            2 => spec.profession_ids.insert(mid(n)),
            3 => spec.nationality_ids.insert(mid(n)),
            _ => false,
        };
    }
    let docs = rng.gen_range(0..=max_docs);
    let mut annotations = Vec::new();
    for d in 0..docs {
        let n = rng.gen_range(1..=max_per_doc);
        let mut offset = rng.gen_range(0..1000u64);
        for _ in 0..n {
            let len = rng.gen_range(1..30u64);
            annotations.push(Annotation {
                doc_id: format!("clueweb12-0000tw-00-{d:05}"),
                encoding: "UTF-8".into(),
                surface: format!("mention {offset}"),
                begin: offset,
                end: offset + len,
                p_text_ctx: rng.gen_range(0.0..1.0),
                p_ctx: rng.gen_range(0.0..0.01),
                entity: mid(rng.gen_range(0..entities)),
            });
            offset += len + rng.gen_range(0..200);
        }
    }
    Synthetic { spec, annotations }
}

fn is_value(spec: &FilterSpec, e: &EntityId) -> bool {
    spec.profession_ids.contains(e) || spec.nationality_ids.contains(e)
}

/// Keeps every annotation of a person or value entity.
pub fn oracle_pass1(items: &[Annotation], spec: &FilterSpec) -> Vec<Annotation> {
    let mut out = Vec::new();
    for a in items {
        if spec.person_ids.contains(&a.entity) || is_value(spec, &a.entity) {
            out.push(a.clone());
        }
    }
    out
}

/// Keeps the annotations of every document holding both a person and a value,
/// judging each document by a full scan of the input.
pub fn oracle_pass2(items: &[Annotation], spec: &FilterSpec) -> Vec<Annotation> {
    let mut out = Vec::new();
    for a in items {
        let same_doc = items.iter().filter(|b| b.doc_id == a.doc_id);
        let mut person = false;
        let mut value = false;
        for b in same_doc {
            person |= spec.person_ids.contains(&b.entity);
            value |= is_value(spec, &b.entity);
        }
        if person && value {
            out.push(a.clone());
        }
    }
    out
}

/// (person, entity) -> count and entity -> total, by a nested loop over the
/// distinct documents of every person.
pub type OracleIndex = (BTreeMap<(EntityId, EntityId), u64>, BTreeMap<EntityId, u64>);

pub fn oracle_index(items: &[Annotation], spec: &FilterSpec, per_document: bool) -> OracleIndex {
    let docs: BTreeSet<&str> = items.iter().map(|a| a.doc_id.as_str()).collect();
    let mut counts = BTreeMap::new();
    for doc in &docs {
        let persons: BTreeSet<&EntityId> = items
            .iter()
            .filter(|a| a.doc_id == *doc && spec.person_ids.contains(&a.entity))
            .map(|a| &a.entity)
            .collect();
        for p in persons {
            let mut seen = HashSet::new();
            for a in items.iter().filter(|a| a.doc_id == *doc) {
                if !is_value(spec, &a.entity) {
                    continue;
                }
                if per_document && !seen.insert(a.entity.clone()) {
                    continue;
                }
                *counts.entry((p.clone(), a.entity.clone())).or_insert(0) += 1;
            }
        }
    }
    let mut totals = BTreeMap::new();
    for a in items {
        if is_value(spec, &a.entity) {
            *totals.entry(a.entity.clone()).or_insert(0) += 1;
        }
    }
    (counts, totals)
}

pub fn flatten(index: &triplerank::cooccur::CooccurrenceIndex) -> OracleIndex {
    let mut counts = BTreeMap::new();
    for p in index.persons() {
        for (e, &c) in index.person_counts(p).unwrap() {
            counts.insert((p.clone(), e.clone()), c);
        }
    }
    (counts, index.totals().clone())
}

pub fn score(n: u8) -> Score {
    Score::new(n).unwrap()
}

pub type Table = BTreeMap<(String, String), Score>;

/// A random gold table and a prediction table over the same keys.
pub fn random_tables<R: Rng>(rng: &mut R) -> (Table, Table) {
    let mut pred = Table::new();
    let mut gold = Table::new();
    for p in 0..rng.gen_range(1..=12) {
        for v in 0..rng.gen_range(1..=8) {
            let key = (format!("person {p}"), format!("value {v}"));
            pred.insert(key.clone(), score(rng.gen_range(0..=7)));
            gold.insert(key, score(rng.gen_range(0..=7)));
        }
    }
    (pred, gold)
}

pub fn oracle_accuracy(pred: &Table, gold: &Table, window: i32) -> f64 {
    let hits = gold
        .iter()
        .filter(|(k, g)| (pred[*k].get() as i32 - g.get() as i32).abs() <= window)
        .count();
    hits as f64 / gold.len() as f64
}

pub fn oracle_asd(pred: &Table, gold: &Table) -> f64 {
    let total: i32 = gold
        .iter()
        .map(|(k, g)| (pred[k].get() as i32 - g.get() as i32).abs())
        .sum();
    total as f64 / gold.len() as f64
}

/// Tie-corrected tau by direct pair enumeration; a zero denominator gives 0.
pub fn oracle_tau_b(xs: &[i32], ys: &[i32]) -> f64 {
    let n = xs.len();
    let (mut concordant, mut discordant, mut tied_x, mut tied_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let dx = xs[i] - xs[j];
            let dy = ys[i] - ys[j];
            if dx == 0 {
                tied_x += 1;
            }
            if dy == 0 {
                tied_y += 1;
            }
            match (dx * dy).signum() {
                1 => concordant += 1,
                -1 => discordant += 1,
                _ => {}
            }
        }
    }
    let pairs = (n * n.saturating_sub(1) / 2) as i64;
    let denominator = ((pairs - tied_x) * (pairs - tied_y)) as f64;
    if denominator == 0.0 {
        0.0
    } else {
        (concordant - discordant) as f64 / denominator.sqrt()
    }
}

/// Mean per-person tau-b over persons with at least two triples.
pub fn oracle_mean_tau(pred: &Table, gold: &Table) -> f64 {
    let persons: BTreeSet<&String> = gold.keys().map(|(p, _)| p).collect();
    let mut taus = Vec::new();
    for person in persons {
        let keys: Vec<_> = gold.keys().filter(|(p, _)| p == person).collect();
        if keys.len() < 2 {
            continue;
        }
        let xs: Vec<i32> = keys.iter().map(|k| pred[*k].get() as i32).collect();
        let ys: Vec<i32> = keys.iter().map(|k| gold[*k].get() as i32).collect();
        taus.push(oracle_tau_b(&xs, &ys));
    }
    if taus.is_empty() {
        0.0
    } else {
        taus.iter().sum::<f64>() / taus.len() as f64
    }
}

pub fn mini_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/mini")
}

/// Copies the mini-corpus inputs and config into `dest`.
pub fn stage_mini(dest: &Path) -> PathBuf {
    let src = mini_dir();
    copy_tree(&src.join("inputs"), &dest.join("inputs"));
    std::fs::copy(src.join("pipeline.toml"), dest.join("pipeline.toml")).unwrap();
    dest.join("pipeline.toml")
}

fn copy_tree(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_tree(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}

pub fn run_cli(args: &[&str]) -> i32 {
    let mut full = vec!["triplerank"];
    full.extend_from_slice(args);
    triplerank::cli::run(full)
}
