use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::cooccur::CooccurrenceIndex;
use crate::model::{AbstractStore, EntityCatalog, EntityId, KnowledgeBase, Relation, Score};
use crate::strategies::{abstract_score, count_score, fuse, MentionCandidate};

/// Which strategies contribute to the final score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StrategySelection {
    /// Abstract position only, raw (no default).
    Abstracts,
    /// Co-occurrence counts only, raw (no default).
    Counts,
    /// Maximum of both, with the default applied when both are zero.
    #[default]
    Both,
}

impl FromStr for StrategySelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abstracts" => Ok(StrategySelection::Abstracts),
            "counts" => Ok(StrategySelection::Counts),
            "both" => Ok(StrategySelection::Both),
            other => Err(format!(
                "unknown strategy `{other}` (expected abstracts, counts or both)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoringConfig {
    /// Emitted when neither strategy finds evidence.
    pub default_score: Score,
    pub strategy: StrategySelection,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        ScoringConfig {
            default_score: Score::new(4).unwrap(),
            strategy: StrategySelection::Both,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScoredTriple {
    pub person: String,
    pub relation: Relation,
    pub value: String,
    pub score: Score,
    pub abstract_score: Score,
    pub count_score: Score,
    pub defaulted: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScoringOutput {
    /// Sorted by person, relation, value.
    pub triples: Vec<ScoredTriple>,
    pub warnings: Vec<String>,
}

impl ScoringOutput {
    /// Number of triples whose score came from the default.
    pub fn defaulted(&self) -> usize {
        self.triples.iter().filter(|t| t.defaulted).count()
    }
}

struct Inputs<'a> {
    catalog: &'a EntityCatalog,
    abstracts: &'a AbstractStore,
    index: Option<&'a CooccurrenceIndex>,
    config: &'a ScoringConfig,
}

/// Scores one person's candidates for one relation.
fn score_group(
    inputs: &Inputs<'_>,
    person: &str,
    relation: Relation,
    values: &[&str],
    warnings: &mut Vec<String>,
) -> Vec<ScoredTriple> {
    let Inputs {
        catalog,
        abstracts,
        index,
        config,
    } = *inputs;
    let use_abstracts = config.strategy != StrategySelection::Counts;
    let use_counts = config.strategy != StrategySelection::Abstracts;

    let abstract_scores = if use_abstracts {
        let candidates: Vec<MentionCandidate> = values
            .iter()
            .map(|v| {
                MentionCandidate::with_aliases(*v, catalog.aliases(relation, v).iter().cloned())
            })
            .collect();
        abstract_score(abstracts.get(person), &candidates)
    } else {
        BTreeMap::new()
    };

    let count_scores = if use_counts {
        let person_id = catalog.person(person).map(|e| &e.id);
        let value_ids: Vec<(&str, Option<&EntityId>)> = values
            .iter()
            .map(|v| (*v, catalog.value(relation, v).map(|e| &e.id)))
            .collect();
        let id_counts = match (person_id, index) {
            (Some(pid), Some(index)) => {
                if index.person_counts(pid).is_none() {
                    warnings.push(format!(
                        "{relation}: person `{person}` ({pid}) has no co-occurrence entry; counts are zero"
                    ));
                }
                index.counts_for(pid, value_ids.iter().filter_map(|(_, id)| *id))
            }
            (None, _) => {
                warnings.push(format!(
                    "{relation}: person `{person}` has no catalog id; counts are zero"
                ));
                BTreeMap::new()
            }
            (Some(_), None) => BTreeMap::new(),
        };
        let label_counts: BTreeMap<&str, u64> = value_ids
            .iter()
            .map(|(label, id)| {
                (
                    *label,
                    id.and_then(|id| id_counts.get(id)).copied().unwrap_or(0),
                )
            })
            .collect();
        count_score(&label_counts)
    } else {
        BTreeMap::new()
    };

    values
        .iter()
        .map(|value| {
            let a = abstract_scores.get(*value).copied().unwrap_or(Score::MIN);
            let c = count_scores.get(value).copied().unwrap_or(Score::MIN);
            let (score, defaulted) = match config.strategy {
                StrategySelection::Abstracts => (a, false),
                StrategySelection::Counts => (c, false),
                StrategySelection::Both => fuse(a, c, config.default_score),
            };
            ScoredTriple {
                person: person.to_string(),
                relation,
                value: value.to_string(),
                score,
                abstract_score: a,
                count_score: c,
                defaulted,
            }
        })
        .collect()
}

/// Scores every KB pair. The candidate set of a (person, relation) group is
/// exactly that person's KB values for the relation; groups run in parallel
/// and the output is sorted, so reruns are identical.
pub fn score_all(
    kb: &KnowledgeBase,
    catalog: &EntityCatalog,
    abstracts: &AbstractStore,
    index: Option<&CooccurrenceIndex>,
    config: &ScoringConfig,
) -> ScoringOutput {
    let mut groups: Vec<(Relation, &str, Vec<&str>)> = Vec::new();
    for relation in Relation::ALL {
        for (person, values) in kb.candidates(relation) {
            groups.push((relation, person, values));
        }
    }
    let inputs = Inputs {
        catalog,
        abstracts,
        index,
        config,
    };
    let results: Vec<(Vec<ScoredTriple>, Vec<String>)> = groups
        .par_iter()
        .map(|(relation, person, values)| {
            let mut warnings = Vec::new();
            let triples = score_group(&inputs, person, *relation, values, &mut warnings);
            (triples, warnings)
        })
        .collect();
    let mut output = ScoringOutput::default();
    for (triples, warnings) in results {
        output.triples.extend(triples);
        output.warnings.extend(warnings);
    }
    output.triples.sort();
    output.warnings.sort();
    output
}

/// Renders predictions as `person TAB value TAB score`, optionally followed
/// by `abstract_score TAB count_score TAB defaulted`.
pub fn format_predictions<'a>(
    triples: impl IntoIterator<Item = &'a ScoredTriple>,
    provenance: bool,
) -> String {
    let mut out = String::new();
    for t in triples {
        let _ = write!(out, "{}\t{}\t{}", t.person, t.value, t.score);
        if provenance {
            let _ = write!(
                out,
                "\t{}\t{}\t{}",
                t.abstract_score, t.count_score, t.defaulted
            );
        }
        out.push('\n');
    }
    out
}
