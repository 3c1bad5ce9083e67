use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{accuracy, avg_score_diff, kendall_tau, ScoreTable, TauOptions};

/// Metrics for one relation (or the weighted combination of several).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalRow {
    pub relation: String,
    pub triples: usize,
    pub accuracy: f64,
    pub asd: f64,
    pub kendall_tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest |predicted - gold| still counted as accurate.
    pub accuracy_window: u8,
    pub tau: TauOptions,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            accuracy_window: 2,
            tau: TauOptions::default(),
        }
    }
}

/// Computes all metrics for one relation; tau warnings are logged.
pub fn evaluate_relation(
    relation: &str,
    pred: &ScoreTable,
    gold: &ScoreTable,
    options: &EvalOptions,
) -> Result<EvalRow> {
    let tau = kendall_tau(pred, gold, options.tau)?;
    for w in &tau.warnings {
        log::warn!("{relation}: {w}");
    }
    Ok(EvalRow {
        relation: relation.to_string(),
        triples: gold.len(),
        accuracy: accuracy(pred, gold, options.accuracy_window)?,
        asd: avg_score_diff(pred, gold)?,
        kendall_tau: tau.tau,
    })
}

/// Combines rows as Σ(metric · triples) / Σ triples.
pub fn weighted_summary(rows: &[EvalRow]) -> Result<EvalRow> {
    let total: usize = rows.iter().map(|r| r.triples).sum();
    if total == 0 {
        return Err(Error::Validation(
            "cannot combine metrics over zero triples".into(),
        ));
    }
    let weighted = |metric: fn(&EvalRow) -> f64| {
        rows.iter()
            .map(|r| metric(r) * r.triples as f64)
            .sum::<f64>()
            / total as f64
    };
    Ok(EvalRow {
        relation: "overall".into(),
        triples: total,
        accuracy: weighted(|r| r.accuracy),
        asd: weighted(|r| r.asd),
        kendall_tau: weighted(|r| r.kendall_tau),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    /// Aligned text, two decimals.
    #[default]
    Table,
    /// Full precision TSV with a header line.
    Tsv,
    /// One JSON object per row.
    JsonLines,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "tsv" => Ok(ReportFormat::Tsv),
            "json-lines" => Ok(ReportFormat::JsonLines),
            other => Err(format!(
                "unknown format `{other}` (expected table, tsv or json-lines)"
            )),
        }
    }
}

pub fn format_report(rows: &[EvalRow], format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Table => {
            let _ = writeln!(
                out,
                "{:<12} {:>8} {:>8} {:>8} {:>8}",
                "relation", "triples", "acc", "asd", "tau"
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:<12} {:>8} {:>8.2} {:>8.2} {:>8.2}",
                    r.relation, r.triples, r.accuracy, r.asd, r.kendall_tau
                );
            }
        }
        ReportFormat::Tsv => {
            out.push_str("relation\ttriples\taccuracy\tasd\tkendall_tau\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    r.relation, r.triples, r.accuracy, r.asd, r.kendall_tau
                );
            }
        }
        ReportFormat::JsonLines => {
            for r in rows {
                out.push_str(&serde_json::to_string(r).expect("plain struct serializes"));
                out.push('\n');
            }
        }
    }
    out
}
