//! Builds the person/entity co-occurrence index from a filtered corpus and
//! shows both counting modes.
//!
//! ```text
//! cargo run --example build_index
//! ```

use std::path::Path;

use triplerank::cooccur::{build_index, build_index_sharded, CountMode};
use triplerank::facc1::{AnnotationReader, ErrorPolicy, FilterSpec, Separator};
use triplerank::io::open_reader;
use triplerank::model::{load_catalog_dir, EntityId};

fn main() -> triplerank::Result<()> {
    let mini = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/mini");
    let catalog = load_catalog_dir(&mini.join("inputs/catalog"))?;
    let spec = FilterSpec::from_catalog(&catalog);

    let path = mini.join("expected/filtered.tsv");
    let lines: Vec<_> = AnnotationReader::new(
        open_reader(&path)?,
        "filtered.tsv",
        Separator::Tab,
        ErrorPolicy::Abort,
    )
    .collect::<triplerank::Result<_>>()?;

    let index = build_index(
        lines.iter().map(Ok),
        &spec,
        CountMode::Annotation,
        "example",
    )?;
    let docs = build_index(lines.iter().map(Ok), &spec, CountMode::Document, "example")?;
    let sharded = build_index_sharded(&lines, &spec, CountMode::Annotation, 3, "example")?;
    assert_eq!(sharded, index, "shard merge is exact");

    let person = &catalog.person("Bram Koster").expect("in catalog").id;
    println!("co-occurrences of Bram Koster ({person}):");
    println!("{:<20} {:>12} {:>10}", "entity", "annotations", "documents");
    for (entity, count) in index.person_counts(person).into_iter().flatten() {
        println!(
            "{:<20} {:>12} {:>10}",
            entity.as_str(),
            count,
            docs.get(person, entity)
        );
    }
    let actor = EntityId::new("/m/02hrh1q").expect("valid id");
    println!(
        "{} annotations of {actor} in the filtered corpus",
        index.total(&actor)
    );
    println!("{} (person, entity) pairs in total", index.len());
    Ok(())
}
