use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::Result;
use crate::facc1::AsAnnotation;
use crate::model::{EntityCatalog, EntityId};

/// How often one catalog entry's id occurs in a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdPresence {
    /// `person`, `profession` or `nationality`.
    pub kind: &'static str,
    pub label: String,
    pub id: EntityId,
    pub count: u64,
}

impl IdPresence {
    pub fn is_missing(&self) -> bool {
        self.count == 0
    }
}

/// Counts, for every catalog entry, the annotations whose entity equals its id.
/// Rows follow catalog order: persons, professions, nationalities, each by label.
pub fn verify_ids<I, T>(catalog: &EntityCatalog, corpus: I) -> Result<Vec<IdPresence>>
where
    I: IntoIterator<Item = Result<T>>,
    T: AsAnnotation,
{
    let mut counts: HashMap<EntityId, u64> = HashMap::new();
    for kind in [
        &catalog.persons,
        &catalog.professions,
        &catalog.nationalities,
    ] {
        for entry in kind.values() {
            counts.insert(entry.id.clone(), 0);
        }
    }
    for item in corpus {
        let item = item?;
        if let Some(c) = counts.get_mut(&item.annotation().entity) {
            *c += 1;
        }
    }
    let mut rows = Vec::new();
    for (kind, map) in [
        ("person", &catalog.persons),
        ("profession", &catalog.professions),
        ("nationality", &catalog.nationalities),
    ] {
        for entry in map.values() {
            rows.push(IdPresence {
                kind,
                label: entry.label.clone(),
                id: entry.id.clone(),
                count: counts[&entry.id],
            });
        }
    }
    Ok(rows)
}

/// `kind TAB label TAB mid TAB count TAB status` lines, status `ok` or `missing`.
pub fn format_presence_report(rows: &[IdPresence]) -> String {
    let mut out = String::from("#kind\tlabel\tmid\tcount\tstatus\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            row.kind,
            row.label,
            row.id,
            row.count,
            if row.is_missing() { "missing" } else { "ok" }
        );
    }
    out
}
