//! Evaluation: accuracy, average score difference, Kendall tau, weighted
//! summaries and confusion matrices.

mod align;
mod confusion;
mod kendall;
mod metrics;
mod report;

pub use align::{align, Judged, ScoreTable};
pub use confusion::{confusion, ConfusionMatrix};
pub use kendall::{kendall_tau, PairCounts, TauGrouping, TauOptions, TauSummary, TauVariant};
pub use metrics::{accuracy, avg_score_diff};
pub use report::{
    evaluate_relation, format_report, weighted_summary, EvalOptions, EvalRow, ReportFormat,
};
