//! Reads an entity-link annotation file and prints a few records plus
//! corpus statistics.
//!
//! ```text
//! cargo run --example parse_annotations -- [corpus.tsv[.gz]]
//! ```

use std::path::PathBuf;

use triplerank::facc1::{corpus_stats, Annotation, AnnotationReader, ErrorPolicy, Separator};
use triplerank::io::open_reader;

fn main() -> triplerank::Result<()> {
    // The line format, in the comma-separated style used by hand-written fixtures.
    let line = "clueweb12-0000tw-00-00013, UTF-8, George Clooney, 10651, 10665, 0.995516, 0.000126, /m/014zcr";
    let a = Annotation::parse(line, Separator::Comma).expect("well-formed line");
    println!(
        "{} mentions {} as {:?} at bytes {}..{}",
        a.doc_id, a.entity, a.surface, a.begin, a.end
    );

    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/mini/inputs/corpus.tsv")
        });
    let origin = path.display().to_string();

    // Skip mode logs malformed lines and keeps going; Abort stops at the first one.
    let reader = AnnotationReader::new(
        open_reader(&path)?,
        origin.clone(),
        Separator::Tab,
        ErrorPolicy::Skip,
    );
    for item in reader.take(3) {
        let line = item?;
        println!(
            "line {:>4}: {} -> {}",
            line.number, line.record.doc_id, line.record.entity
        );
    }

    let mut reader = AnnotationReader::new(
        open_reader(&path)?,
        origin,
        Separator::Tab,
        ErrorPolicy::Skip,
    );
    let stats = corpus_stats(&mut reader)?;
    println!(
        "{} documents, {} annotations ({:.2} per document), {} malformed lines skipped",
        stats.documents,
        stats.annotations,
        stats.annotations_per_document,
        reader.skipped()
    );
    Ok(())
}
