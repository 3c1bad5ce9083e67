//! Scores knowledge-base triples with the abstract-location and log-count
//! strategies, then prints the per-triple evidence.
//!
//! ```text
//! cargo run --example score_triples
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use triplerank::cooccur::CooccurrenceIndex;
use triplerank::io::open_reader;
use triplerank::model::{load_abstracts, load_catalog_dir, load_kb_dir, Relation, Score};
use triplerank::strategies::{
    abstract_score, count_score, score_all, MentionCandidate, ScoringConfig,
};

fn main() -> triplerank::Result<()> {
    // The two strategies on their own.
    // Candidates are one person's values for one relation; the earliest mention wins.
    let text = "A Dutch actor who later became a politician.";
    let professions = [
        MentionCandidate::new("Politician"),
        MentionCandidate::new("Actor"),
    ];
    let nationalities = [
        MentionCandidate::new("Germany"),
        MentionCandidate::with_aliases("Netherlands", ["Dutch"]),
    ];
    for candidates in [&professions[..], &nationalities[..]] {
        for (label, score) in abstract_score(text, candidates) {
            println!("abstract: {label:<12} {score}");
        }
    }
    let counts = BTreeMap::from([("Politician", 120u64), ("Actor", 9), ("Singer", 0)]);
    for (label, score) in count_score(&counts) {
        println!(
            "counts:   {label:<12} {score} ({} co-occurrences)",
            counts[label]
        );
    }

    // The whole knowledge base.
    let mini = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/mini");
    let catalog = load_catalog_dir(&mini.join("inputs/catalog"))?;
    let kb = load_kb_dir(&mini.join("inputs/kb"), &catalog)?;
    let abstracts = load_abstracts(&mini.join("inputs/abstracts.tsv"), &catalog)?;
    let index_path = mini.join("expected/index.tsv");
    let index = CooccurrenceIndex::read_tsv(open_reader(&index_path)?, "index.tsv")?;

    let config = ScoringConfig {
        default_score: Score::new(4).expect("in range"),
        ..ScoringConfig::default()
    };
    let output = score_all(&kb, &catalog, &abstracts, Some(&index), &config);
    println!(
        "\n{:<16} {:<20} score abstract counts",
        "person", "nationality"
    );
    for t in output
        .triples
        .iter()
        .filter(|t| t.relation == Relation::Nationality)
    {
        let note = if t.defaulted { "  (default)" } else { "" };
        println!(
            "{:<16} {:<20} {:>5} {:>8} {:>6}{note}",
            t.person,
            t.value,
            t.score.get(),
            t.abstract_score.get(),
            t.count_score.get()
        );
    }
    println!(
        "{} triples, {} without evidence",
        output.triples.len(),
        output.defaulted()
    );
    for w in &output.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
