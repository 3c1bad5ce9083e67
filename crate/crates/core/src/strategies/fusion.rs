use crate::model::Score;

/// Combines the two strategy scores: their maximum, or `default` (flagged as
/// defaulted) when both are zero.
pub fn fuse(abstract_score: Score, count_score: Score, default: Score) -> (Score, bool) {
    let best = abstract_score.max(count_score);
    if best > Score::MIN {
        (best, false)
    } else {
        (default, true)
    }
}
