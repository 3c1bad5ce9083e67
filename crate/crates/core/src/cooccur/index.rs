use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::model::EntityId;

/// Per-person co-occurrence counts: person id -> (entity id -> count).
///
/// Zero counts are never stored; a missing pair means zero. `totals` holds the
/// corpus-wide annotation count of every retained entity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CooccurrenceIndex {
    pub(crate) counts: BTreeMap<EntityId, BTreeMap<EntityId, u64>>,
    pub(crate) totals: BTreeMap<EntityId, u64>,
    pub(crate) built_from: String,
}

impl CooccurrenceIndex {
    pub fn new(built_from: impl Into<String>) -> Self {
        CooccurrenceIndex {
            built_from: built_from.into(),
            ..Default::default()
        }
    }

    pub fn built_from(&self) -> &str {
        &self.built_from
    }

    pub fn set_built_from(&mut self, id: impl Into<String>) {
        self.built_from = id.into();
    }

    /// Count for one (person, entity) pair, zero when absent.
    pub fn get(&self, person: &EntityId, entity: &EntityId) -> u64 {
        self.counts
            .get(person)
            .and_then(|m| m.get(entity))
            .copied()
            .unwrap_or(0)
    }

    pub fn person_counts(&self, person: &EntityId) -> Option<&BTreeMap<EntityId, u64>> {
        self.counts.get(person)
    }

    pub fn persons(&self) -> impl Iterator<Item = &EntityId> {
        self.counts.keys()
    }

    /// Corpus-wide annotation count of `entity`.
    pub fn total(&self, entity: &EntityId) -> u64 {
        self.totals.get(entity).copied().unwrap_or(0)
    }

    pub fn totals(&self) -> &BTreeMap<EntityId, u64> {
        &self.totals
    }

    /// Number of stored (person, entity) pairs.
    pub fn len(&self) -> usize {
        self.counts.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Adds `count` to the pair; zero is a no-op.
    pub fn add(&mut self, person: &EntityId, entity: &EntityId, count: u64) {
        if count == 0 {
            return;
        }
        *self
            .counts
            .entry(person.clone())
            .or_default()
            .entry(entity.clone())
            .or_insert(0) += count;
    }

    pub fn add_total(&mut self, entity: &EntityId, count: u64) {
        if count > 0 {
            *self.totals.entry(entity.clone()).or_insert(0) += count;
        }
    }

    /// The person's counts restricted to `candidates`; absent pairs (and
    /// unknown persons) give 0.
    pub fn counts_for<'a, I>(&self, person: &EntityId, candidates: I) -> BTreeMap<EntityId, u64>
    where
        I: IntoIterator<Item = &'a EntityId>,
    {
        let row = self.counts.get(person);
        candidates
            .into_iter()
            .map(|c| (c.clone(), row.and_then(|r| r.get(c)).copied().unwrap_or(0)))
            .collect()
    }

    /// Pointwise sum of two indexes built from disjoint document shards.
    pub fn merge(mut self, other: CooccurrenceIndex) -> CooccurrenceIndex {
        for (person, row) in other.counts {
            let target = self.counts.entry(person).or_default();
            for (entity, count) in row {
                *target.entry(entity).or_insert(0) += count;
            }
        }
        for (entity, count) in other.totals {
            *self.totals.entry(entity).or_insert(0) += count;
        }
        self.built_from = match (self.built_from.is_empty(), other.built_from.is_empty()) {
            (_, true) => self.built_from,
            (true, false) => other.built_from,
            (false, false) => format!("{}+{}", self.built_from, other.built_from),
        };
        self
    }

    /// Serializes to the TSV index format: a `#built_from=` header, one
    /// `#total` line per entity, then `person TAB entity TAB count` rows
    /// sorted by person and entity.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "#built_from={}", self.built_from);
        for (entity, total) in &self.totals {
            let _ = writeln!(out, "#total\t{entity}\t{total}");
        }
        for (person, row) in &self.counts {
            for (entity, count) in row {
                let _ = writeln!(out, "{person}\t{entity}\t{count}");
            }
        }
        out
    }

    pub fn write_tsv<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        writer.write_all(self.to_tsv().as_bytes())
    }

    /// Parses the format produced by [`to_tsv`](Self::to_tsv).
    pub fn read_tsv<R: BufRead>(reader: R, origin: &str) -> Result<CooccurrenceIndex> {
        let mut index = CooccurrenceIndex::default();
        for (i, line) in reader.lines().enumerate() {
            let number = i as u64 + 1;
            let line = line.map_err(|e| Error::parse(origin, number, e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            if let Some(id) = line.strip_prefix("#built_from=") {
                index.built_from = id.to_string();
                continue;
            }
            let (fields, is_total) = match line.strip_prefix("#total\t") {
                Some(rest) => (rest, true),
                None if line.starts_with('#') => continue,
                None => (line.as_str(), false),
            };
            let parts: Vec<&str> = fields.split('\t').collect();
            let bad = |msg: String| Error::parse(origin, number, msg);
            let mid = |s: &str| EntityId::new(s).map_err(|e| bad(e.to_string()));
            let count = |s: &str| -> Result<u64> {
                match s.parse::<u64>() {
                    Ok(c) if c > 0 => Ok(c),
                    _ => Err(bad(format!("count `{s}` is not a positive integer"))),
                }
            };
            match (is_total, parts.as_slice()) {
                (true, [entity, c]) => {
                    index.totals.insert(mid(entity)?, count(c)?);
                }
                (false, [person, entity, c]) => {
                    let person = mid(person)?;
                    let entity = mid(entity)?;
                    let c = count(c)?;
                    if index
                        .counts
                        .entry(person)
                        .or_default()
                        .insert(entity, c)
                        .is_some()
                    {
                        return Err(bad("duplicate (person, entity) row".into()));
                    }
                }
                _ => return Err(bad(format!("unexpected field count {}", parts.len()))),
            }
        }
        Ok(index)
    }
}
