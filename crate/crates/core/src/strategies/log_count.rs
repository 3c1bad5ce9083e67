use std::collections::BTreeMap;

use crate::model::Score;

/// Maps co-occurrence counts onto 0..=7 on a log scale.
///
/// With `C` the largest count in the map, a count `c > 0` scores
/// `round_half_up(7 * ln(1 + c) / ln(1 + C))`; zero counts score 0, and so
/// does everything when `C == 0`.
pub fn count_score<K: Ord + Clone>(counts: &BTreeMap<K, u64>) -> BTreeMap<K, Score> {
    let max = counts.values().copied().max().unwrap_or(0);
    counts
        .iter()
        .map(|(k, &c)| (k.clone(), scale(c, max)))
        .collect()
}

/// Score of a single count `c` given the maximum count `max` of its group.
pub fn scale(c: u64, max: u64) -> Score {
    if c == 0 || max == 0 {
        return Score::MIN;
    }
    if c >= max {
        return Score::MAX;
    }
    let ratio = (c as f64 + 1.0).ln() / (max as f64 + 1.0).ln();
    let scaled = (7.0 * ratio + 0.5).floor().clamp(0.0, 7.0);
    Score::new(scaled as u8).expect("clamped to 0..=7")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_scaling_example() {
        let counts = BTreeMap::from([("a", 100), ("b", 10), ("c", 0)]);
        let got: Vec<u8> = count_score(&counts).values().map(|s| s.get()).collect();
        assert_eq!(got, [7, 4, 0]);
    }

    #[test]
    fn no_evidence_scores_zero() {
        let counts = BTreeMap::from([("a", 0), ("b", 0)]);
        assert!(count_score(&counts).values().all(|s| *s == Score::MIN));
        assert!(count_score(&BTreeMap::<&str, u64>::new()).is_empty());
    }

    #[test]
    fn single_candidate_is_the_max() {
        let counts = BTreeMap::from([("a", 1)]);
        assert_eq!(count_score(&counts)["a"], Score::MAX);
    }

    #[test]
    fn small_counts() {
        // 7 * ln 2 / ln 3 = 4.416 -> 4
        assert_eq!(scale(1, 2).get(), 4);
        // 7 * ln 2 / ln 1001 = 0.702 -> 1
        assert_eq!(scale(1, 1000).get(), 1);
        // 7 * ln 2 / ln 1e6 = 0.351 -> 0: positive counts may still round to 0
        assert_eq!(scale(1, 999_999).get(), 0);
    }
}
