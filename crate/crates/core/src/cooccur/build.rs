use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use rayon::prelude::*;

use crate::cooccur::CooccurrenceIndex;
use crate::error::{Error, Result};
use crate::facc1::{split_documents, AsAnnotation, FilterSpec};
use crate::model::EntityId;

/// What one co-occurring document contributes for an entity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMode {
    /// The number of annotations of the entity in the document.
    #[default]
    Annotation,
    /// 1 if the entity is annotated in the document at all.
    Document,
}

impl FromStr for CountMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "annotation" => Ok(CountMode::Annotation),
            "document" => Ok(CountMode::Document),
            other => Err(format!("unknown count mode `{other}`")),
        }
    }
}

/// Accumulates a [`CooccurrenceIndex`] from a document-contiguous stream.
///
/// For each document, every distinct person annotated in it receives the
/// document's profession/nationality annotation counts once, however many
/// times the person is mentioned.
pub struct IndexBuilder<'a> {
    spec: &'a FilterSpec,
    mode: CountMode,
    current: Option<String>,
    persons: Vec<EntityId>,
    values: HashMap<EntityId, u64>,
    finished_docs: HashSet<String>,
    counts: HashMap<EntityId, HashMap<EntityId, u64>>,
    totals: HashMap<EntityId, u64>,
}

impl<'a> IndexBuilder<'a> {
    pub fn new(spec: &'a FilterSpec, mode: CountMode) -> Self {
        IndexBuilder {
            spec,
            mode,
            current: None,
            persons: Vec::new(),
            values: HashMap::new(),
            finished_docs: HashSet::new(),
            counts: HashMap::new(),
            totals: HashMap::new(),
        }
    }

    pub fn push<T: AsAnnotation>(&mut self, item: &T) -> Result<()> {
        let record = item.annotation();
        if self.current.as_deref() != Some(record.doc_id.as_str()) {
            self.close_document();
            if !self.finished_docs.insert(record.doc_id.clone()) {
                return Err(Error::NonContiguous {
                    doc_id: record.doc_id.clone(),
                    line: item.line_number(),
                });
            }
            self.current = Some(record.doc_id.clone());
        }
        let entity = &record.entity;
        if self.spec.is_person(entity) && !self.persons.contains(entity) {
            self.persons.push(entity.clone());
        }
        if self.spec.is_value(entity) {
            *self.values.entry(entity.clone()).or_insert(0) += 1;
        }
        Ok(())
    }

    fn close_document(&mut self) {
        self.current = None;
        for (entity, &n) in &self.values {
            *self.totals.entry(entity.clone()).or_insert(0) += n;
        }
        if !self.persons.is_empty() {
            for person in self.persons.drain(..) {
                let row = self.counts.entry(person).or_default();
                for (entity, &n) in &self.values {
                    let add = match self.mode {
                        CountMode::Annotation => n,
                        CountMode::Document => 1,
                    };
                    *row.entry(entity.clone()).or_insert(0) += add;
                }
            }
        }
        self.values.clear();
    }

    pub fn finish(mut self, built_from: impl Into<String>) -> CooccurrenceIndex {
        self.close_document();
        let mut index = CooccurrenceIndex::new(built_from);
        for (person, row) in self.counts {
            for (entity, count) in row {
                index.add(&person, &entity, count);
            }
        }
        for (entity, total) in self.totals {
            index.add_total(&entity, total);
        }
        index
    }
}

/// Builds an index from a document-contiguous stream.
pub fn build_index<I, T>(
    items: I,
    spec: &FilterSpec,
    mode: CountMode,
    built_from: &str,
) -> Result<CooccurrenceIndex>
where
    I: IntoIterator<Item = Result<T>>,
    T: AsAnnotation,
{
    let mut builder = IndexBuilder::new(spec, mode);
    for item in items {
        builder.push(&item?)?;
    }
    Ok(builder.finish(built_from))
}

/// Builds per-shard indexes in parallel over document-aligned slices and
/// merges them.
pub fn build_index_sharded<T>(
    items: &[T],
    spec: &FilterSpec,
    mode: CountMode,
    shards: usize,
    built_from: &str,
) -> Result<CooccurrenceIndex>
where
    T: AsAnnotation + Sync,
{
    let parts = split_documents(items, shards);
    let indexes: Vec<CooccurrenceIndex> = parts
        .par_iter()
        .map(|part| build_index(part.iter().map(Ok), spec, mode, ""))
        .collect::<Result<_>>()?;
    let mut merged = indexes
        .into_iter()
        .fold(CooccurrenceIndex::default(), CooccurrenceIndex::merge);
    merged.set_built_from(built_from);
    Ok(merged)
}
