//! Checks which catalog ids actually occur in an annotation corpus.
//!
//! ```text
//! cargo run --example verify_ids
//! ```

use std::path::Path;

use triplerank::facc1::{AnnotationReader, ErrorPolicy, Separator};
use triplerank::io::open_reader;
use triplerank::model::{format_presence_report, load_catalog_dir, verify_ids};

fn main() -> triplerank::Result<()> {
    let mini = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/mini/inputs");
    let catalog = load_catalog_dir(&mini.join("catalog"))?;
    let path = mini.join("corpus.tsv");
    let corpus = AnnotationReader::new(
        open_reader(&path)?,
        "corpus.tsv",
        Separator::Tab,
        ErrorPolicy::Skip,
    );

    let rows = verify_ids(&catalog, corpus)?;
    print!("{}", format_presence_report(&rows));
    let missing = rows.iter().filter(|r| r.is_missing()).count();
    println!("{missing} of {} catalog entries never occur", rows.len());
    Ok(())
}
