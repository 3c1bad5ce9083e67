use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::Score;

/// Scores keyed by (person, value) for one relation.
pub type ScoreTable = BTreeMap<(String, String), Score>;

/// A triple with both its predicted and gold score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Judged<'a> {
    pub person: &'a str,
    pub value: &'a str,
    pub predicted: Score,
    pub gold: Score,
}

impl Judged<'_> {
    pub fn abs_diff(&self) -> u8 {
        self.predicted.get().abs_diff(self.gold.get())
    }
}

/// Pairs every gold triple with its prediction. Fails, listing the offenders,
/// unless both tables have exactly the same keys.
pub fn align<'a>(pred: &'a ScoreTable, gold: &'a ScoreTable) -> Result<Vec<Judged<'a>>> {
    let missing: Vec<_> = gold.keys().filter(|k| !pred.contains_key(*k)).collect();
    let extra: Vec<_> = pred.keys().filter(|k| !gold.contains_key(*k)).collect();
    if !missing.is_empty() || !extra.is_empty() {
        let show = |keys: &[&(String, String)]| {
            let mut s: Vec<String> = keys
                .iter()
                .take(10)
                .map(|(p, v)| format!("({p}, {v})"))
                .collect();
            if keys.len() > 10 {
                s.push(format!("... {} more", keys.len() - 10));
            }
            s.join(", ")
        };
        let mut parts = Vec::new();
        if !missing.is_empty() {
            parts.push(format!(
                "{} gold triples without prediction: {}",
                missing.len(),
                show(&missing)
            ));
        }
        if !extra.is_empty() {
            parts.push(format!(
                "{} predictions without gold: {}",
                extra.len(),
                show(&extra)
            ));
        }
        return Err(Error::Validation(parts.join("; ")));
    }
    Ok(gold
        .iter()
        .map(|((person, value), &g)| Judged {
            person,
            value,
            predicted: pred[&(person.clone(), value.clone())],
            gold: g,
        })
        .collect())
}
