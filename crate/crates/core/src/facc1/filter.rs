//! The two corpus reductions: keep only annotations of catalog entities, then
//! keep only documents where a person co-occurs with a profession or nationality.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::facc1::AsAnnotation;
use crate::model::{EntityCatalog, EntityId};

/// The entity ids a filtered corpus keeps, split by role.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FilterSpec {
    pub person_ids: HashSet<EntityId>,
    pub profession_ids: HashSet<EntityId>,
    pub nationality_ids: HashSet<EntityId>,
}

impl FilterSpec {
    pub fn from_catalog(catalog: &EntityCatalog) -> Self {
        let ids = |map: &std::collections::BTreeMap<String, crate::model::CatalogEntry>| {
            map.values().map(|e| e.id.clone()).collect()
        };
        FilterSpec {
            person_ids: ids(&catalog.persons),
            profession_ids: ids(&catalog.professions),
            nationality_ids: ids(&catalog.nationalities),
        }
    }

    pub fn is_person(&self, id: &EntityId) -> bool {
        self.person_ids.contains(id)
    }

    /// True for profession and nationality ids.
    pub fn is_value(&self, id: &EntityId) -> bool {
        self.profession_ids.contains(id) || self.nationality_ids.contains(id)
    }

    pub fn keeps(&self, id: &EntityId) -> bool {
        self.is_person(id) || self.is_value(id)
    }
}

/// Per-document evidence tracked by the co-occurrence predicate.
#[derive(Debug, Clone, Copy, Default)]
struct DocFlags {
    person: bool,
    value: bool,
}

impl DocFlags {
    fn observe(&mut self, spec: &FilterSpec, id: &EntityId) {
        self.person |= spec.is_person(id);
        self.value |= spec.is_value(id);
    }

    fn qualifies(self) -> bool {
        self.person && self.value
    }
}

/// Keeps the items whose entity is in `spec`, in input order.
pub fn filter_pass1<'a, I, T>(
    items: I,
    spec: &'a FilterSpec,
) -> impl Iterator<Item = Result<T>> + 'a
where
    I: IntoIterator<Item = Result<T>>,
    I::IntoIter: 'a,
    T: AsAnnotation,
{
    items.into_iter().filter(move |item| match item {
        Ok(item) => spec.keeps(&item.annotation().entity),
        Err(_) => true,
    })
}

/// Keeps whole documents that contain a person and a profession or nationality.
///
/// The input must be document-contiguous: a document id that reappears after
/// another document yields [`Error::NonContiguous`]. Only one document is
/// buffered at a time.
pub struct Pass2<'a, I, T> {
    inner: I,
    spec: &'a FilterSpec,
    current: Option<String>,
    buffer: Vec<T>,
    flags: DocFlags,
    finished_docs: HashSet<String>,
    ready: VecDeque<T>,
    done: bool,
}

impl<'a, I, T> Pass2<'a, I, T>
where
    I: Iterator<Item = Result<T>>,
    T: AsAnnotation,
{
    pub fn new(inner: I, spec: &'a FilterSpec) -> Self {
        Pass2 {
            inner,
            spec,
            current: None,
            buffer: Vec::new(),
            flags: DocFlags::default(),
            finished_docs: HashSet::new(),
            ready: VecDeque::new(),
            done: false,
        }
    }

    fn close_document(&mut self) {
        if self.flags.qualifies() {
            self.ready.extend(self.buffer.drain(..));
        } else {
            self.buffer.clear();
        }
        self.flags = DocFlags::default();
        if let Some(doc) = self.current.take() {
            self.finished_docs.insert(doc);
        }
    }
}

impl<I, T> Iterator for Pass2<'_, I, T>
where
    I: Iterator<Item = Result<T>>,
    T: AsAnnotation,
{
    type Item = Result<T>;

    fn next(&mut self) -> Option<Result<T>> {
        loop {
            if let Some(item) = self.ready.pop_front() {
                return Some(Ok(item));
            }
            if self.done {
                return None;
            }
            match self.inner.next() {
                None => {
                    self.done = true;
                    self.close_document();
                }
                Some(Err(e)) => {
                    self.done = true;
                    return Some(Err(e));
                }
                Some(Ok(item)) => {
                    let record = item.annotation();
                    if self.current.as_deref() != Some(record.doc_id.as_str()) {
                        self.close_document();
                        if self.finished_docs.contains(&record.doc_id) {
                            self.done = true;
                            return Some(Err(Error::NonContiguous {
                                doc_id: record.doc_id.clone(),
                                line: item.line_number(),
                            }));
                        }
                        self.current = Some(record.doc_id.clone());
                    }
                    self.flags.observe(self.spec, &record.entity);
                    self.buffer.push(item);
                }
            }
        }
    }
}

/// Streaming second pass over a document-contiguous input.
pub fn filter_pass2<'a, I, T>(items: I, spec: &'a FilterSpec) -> Pass2<'a, I::IntoIter, T>
where
    I: IntoIterator<Item = Result<T>>,
    T: AsAnnotation,
{
    Pass2::new(items.into_iter(), spec)
}

/// First scan of the order-independent second pass: the documents that satisfy
/// the co-occurrence predicate anywhere in the input.
pub fn qualifying_documents<I, T>(items: I, spec: &FilterSpec) -> Result<HashSet<String>>
where
    I: IntoIterator<Item = Result<T>>,
    T: AsAnnotation,
{
    let mut flags: HashMap<String, DocFlags> = HashMap::new();
    for item in items {
        let item = item?;
        let record = item.annotation();
        match flags.get_mut(&record.doc_id) {
            Some(f) => f.observe(spec, &record.entity),
            None => {
                let mut f = DocFlags::default();
                f.observe(spec, &record.entity);
                flags.insert(record.doc_id.clone(), f);
            }
        }
    }
    Ok(flags
        .into_iter()
        .filter(|(_, f)| f.qualifies())
        .map(|(doc, _)| doc)
        .collect())
}

/// Second scan of the order-independent second pass.
pub fn keep_documents<'a, I, T>(
    items: I,
    documents: &'a HashSet<String>,
) -> impl Iterator<Item = Result<T>> + 'a
where
    I: IntoIterator<Item = Result<T>>,
    I::IntoIter: 'a,
    T: AsAnnotation,
{
    items.into_iter().filter(move |item| match item {
        Ok(item) => documents.contains(&item.annotation().doc_id),
        Err(_) => true,
    })
}

/// In-memory first pass.
pub fn pass1<T: AsAnnotation + Clone>(items: &[T], spec: &FilterSpec) -> Vec<T> {
    items
        .iter()
        .filter(|item| spec.keeps(&item.annotation().entity))
        .cloned()
        .collect()
}

/// In-memory second pass over a document-contiguous slice.
pub fn pass2<T: AsAnnotation + Clone>(items: &[T], spec: &FilterSpec) -> Result<Vec<T>> {
    filter_pass2(items.iter().cloned().map(Ok), spec).collect()
}

/// In-memory second pass that tolerates any document order.
pub fn pass2_unordered<T: AsAnnotation + Clone>(items: &[T], spec: &FilterSpec) -> Vec<T> {
    let docs = qualifying_documents(items.iter().map(Ok::<_, Error>), spec)
        .expect("in-memory scan cannot fail");
    items
        .iter()
        .filter(|item| docs.contains(&item.annotation().doc_id))
        .cloned()
        .collect()
}
