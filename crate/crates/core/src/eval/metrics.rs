use crate::error::Result;
use crate::eval::{align, ScoreTable};

/// Fraction of triples whose prediction is within `window` of the gold score.
/// An empty table scores 0.
pub fn accuracy(pred: &ScoreTable, gold: &ScoreTable, window: u8) -> Result<f64> {
    let judged = align(pred, gold)?;
    if judged.is_empty() {
        return Ok(0.0);
    }
    let hits = judged.iter().filter(|j| j.abs_diff() <= window).count();
    Ok(hits as f64 / judged.len() as f64)
}

/// Mean absolute difference between predicted and gold scores.
pub fn avg_score_diff(pred: &ScoreTable, gold: &ScoreTable) -> Result<f64> {
    let judged = align(pred, gold)?;
    if judged.is_empty() {
        return Ok(0.0);
    }
    let total: u64 = judged.iter().map(|j| u64::from(j.abs_diff())).sum();
    Ok(total as f64 / judged.len() as f64)
}
