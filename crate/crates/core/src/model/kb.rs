use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::io::read_tsv;
use crate::model::{EntityCatalog, Relation, Score};

pub const PROFESSION_KB_FILE: &str = "profession.kb";
pub const NATIONALITY_KB_FILE: &str = "nationality.kb";
pub const GOLD_FILE: &str = "gold.tsv";

/// A (person, relation, value) statement. Ordering is person, then relation,
/// then value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleKey {
    pub person: String,
    pub relation: Relation,
    pub value: String,
}

impl TripleKey {
    pub fn new(person: impl Into<String>, relation: Relation, value: impl Into<String>) -> Self {
        TripleKey {
            person: person.into(),
            relation,
            value: value.into(),
        }
    }
}

/// Candidate (person, value) pairs per relation and the gold scores known for
/// some of them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub profession_pairs: BTreeSet<(String, String)>,
    pub nationality_pairs: BTreeSet<(String, String)>,
    pub gold: BTreeMap<TripleKey, Score>,
}

impl KnowledgeBase {
    pub fn pairs(&self, relation: Relation) -> &BTreeSet<(String, String)> {
        match relation {
            Relation::Profession => &self.profession_pairs,
            Relation::Nationality => &self.nationality_pairs,
        }
    }

    pub fn contains(&self, key: &TripleKey) -> bool {
        self.pairs(key.relation)
            .contains(&(key.person.clone(), key.value.clone()))
    }

    /// Candidate values per person for one relation.
    pub fn candidates(&self, relation: Relation) -> BTreeMap<&str, Vec<&str>> {
        let mut out: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (person, value) in self.pairs(relation) {
            out.entry(person.as_str()).or_default().push(value.as_str());
        }
        out
    }

    /// Gold scores of one relation keyed by (person, value).
    pub fn gold_table(&self, relation: Relation) -> BTreeMap<(String, String), Score> {
        self.gold
            .iter()
            .filter(|(k, _)| k.relation == relation)
            .map(|(k, s)| ((k.person.clone(), k.value.clone()), *s))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.profession_pairs.len() + self.nationality_pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn load_pairs(
    path: &Path,
    relation: Relation,
    catalog: &EntityCatalog,
) -> Result<BTreeSet<(String, String)>> {
    let origin = path.display().to_string();
    let mut pairs = BTreeSet::new();
    let mut unknown = Vec::new();
    for line in read_tsv(path)? {
        let [person, value] = line.fields.as_slice() else {
            return Err(Error::parse(
                &origin,
                line.number,
                format!(
                    "expected 2 tab-separated fields, found {}",
                    line.fields.len()
                ),
            ));
        };
        if catalog.person(person).is_none() {
            unknown.push(format!(
                "{origin}:{}: unknown person `{person}`",
                line.number
            ));
        }
        if catalog.value(relation, value).is_none() {
            unknown.push(format!(
                "{origin}:{}: unknown {relation} `{value}`",
                line.number
            ));
        }
        pairs.insert((person.clone(), value.clone()));
    }
    if unknown.is_empty() {
        Ok(pairs)
    } else {
        Err(Error::Validation(unknown.join("; ")))
    }
}

/// Loads both relation KBs and, optionally, a gold file.
///
/// Gold lines carry no relation column; each is attributed to the relation
/// whose KB contains the pair. A pair found in neither KB, or in both, is
/// rejected.
pub fn load_kb(
    profession_kb: &Path,
    nationality_kb: &Path,
    gold_file: Option<&Path>,
    catalog: &EntityCatalog,
) -> Result<KnowledgeBase> {
    let mut kb = KnowledgeBase {
        profession_pairs: load_pairs(profession_kb, Relation::Profession, catalog)?,
        nationality_pairs: load_pairs(nationality_kb, Relation::Nationality, catalog)?,
        gold: BTreeMap::new(),
    };

    let Some(gold_file) = gold_file else {
        return Ok(kb);
    };
    let origin = gold_file.display().to_string();
    for (line, (person, value), score) in read_score_lines(gold_file, false)? {
        let pair = (person, value);
        let in_prof = kb.profession_pairs.contains(&pair);
        let in_nat = kb.nationality_pairs.contains(&pair);
        let relation = match (in_prof, in_nat) {
            (true, false) => Relation::Profession,
            (false, true) => Relation::Nationality,
            (false, false) => {
                return Err(Error::Validation(format!(
                    "{origin}:{line}: gold pair ({}, {}) is not in the knowledge base",
                    pair.0, pair.1
                )))
            }
            (true, true) => {
                return Err(Error::Validation(format!(
                    "{origin}:{line}: gold pair ({}, {}) is ambiguous: present in both relations",
                    pair.0, pair.1
                )))
            }
        };
        let key = TripleKey::new(pair.0, relation, pair.1);
        if kb.gold.insert(key.clone(), score).is_some() {
            return Err(Error::Validation(format!(
                "{origin}:{line}: duplicate gold score for ({}, {})",
                key.person, key.value
            )));
        }
    }
    Ok(kb)
}

/// Loads a KB directory (`profession.kb`, `nationality.kb`, optional `gold.tsv`).
pub fn load_kb_dir(dir: &Path, catalog: &EntityCatalog) -> Result<KnowledgeBase> {
    let gold = dir.join(GOLD_FILE);
    load_kb(
        &dir.join(PROFESSION_KB_FILE),
        &dir.join(NATIONALITY_KB_FILE),
        gold.exists().then_some(gold.as_path()),
        catalog,
    )
}

type ScoreLine = (u64, (String, String), Score);

fn read_score_lines(path: &Path, extra_columns: bool) -> Result<Vec<ScoreLine>> {
    let origin = path.display().to_string();
    let mut out = Vec::new();
    for line in read_tsv(path)? {
        let fields = match line.fields.as_slice() {
            [p, v, s, ..] if extra_columns => [p, v, s],
            [p, v, s] => [p, v, s],
            _ => {
                return Err(Error::parse(
                    &origin,
                    line.number,
                    format!(
                        "expected 3 tab-separated fields, found {}",
                        line.fields.len()
                    ),
                ))
            }
        };
        let [person, value, score] = fields;
        let score: Score = score
            .parse()
            .map_err(|msg: String| Error::Validation(format!("{origin}:{}: {msg}", line.number)))?;
        out.push((line.number, (person.clone(), value.clone()), score));
    }
    Ok(out)
}

/// Reads a `<person>TAB<value>TAB<score>` file (gold or predictions). Columns
/// after the score, such as prediction provenance, are ignored.
pub fn load_score_table(path: &Path) -> Result<BTreeMap<(String, String), Score>> {
    let origin = path.display().to_string();
    let mut table = BTreeMap::new();
    for (line, pair, score) in read_score_lines(path, true)? {
        if let Some(prev) = table.insert(pair.clone(), score) {
            return Err(Error::Validation(format!(
                "{origin}:{line}: duplicate entry for ({}, {}) (previous score {prev})",
                pair.0, pair.1
            )));
        }
    }
    Ok(table)
}
