//! Evaluates predictions against gold scores and combines relations into a
//! triple-weighted summary.
//!
//! ```text
//! cargo run --example evaluate
//! ```

use std::path::Path;

use triplerank::eval::{
    evaluate_relation, format_report, weighted_summary, EvalOptions, ReportFormat, ScoreTable,
};
use triplerank::model::{load_score_table, Relation};

fn main() -> triplerank::Result<()> {
    let mini = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/mini");
    let gold = load_score_table(&mini.join("inputs/kb/gold.tsv"))?;
    let options = EvalOptions::default();

    let mut rows = Vec::new();
    for relation in Relation::ALL {
        // Prediction files carry extra provenance columns; only the first three are read.
        let pred = load_score_table(&mini.join(format!("expected/pred.{relation}.tsv")))?;
        // Only judged triples take part.
        let gold: ScoreTable = gold
            .iter()
            .filter(|(k, _)| pred.contains_key(*k))
            .map(|(k, v)| (k.clone(), *v))
            .collect();
        let pred: ScoreTable = pred
            .into_iter()
            .filter(|(k, _)| gold.contains_key(k))
            .collect();
        rows.push(evaluate_relation(
            relation.as_str(),
            &pred,
            &gold,
            &options,
        )?);
    }
    rows.push(weighted_summary(&rows)?);
    print!("{}", format_report(&rows, ReportFormat::Table));

    // A perfect run, for reference.
    let perfect = evaluate_relation("gold vs gold", &gold, &gold, &options)?;
    println!(
        "\ngold against itself: accuracy {:.2}, asd {:.2}, tau {:.2}",
        perfect.accuracy, perfect.asd, perfect.kendall_tau
    );
    Ok(())
}
