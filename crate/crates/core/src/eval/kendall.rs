use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::Result;
use crate::eval::{align, ScoreTable};
use crate::model::Score;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TauVariant {
    /// No tie correction.
    A,
    /// Tie-corrected.
    #[default]
    B,
}

impl FromStr for TauVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" | "tau-a" => Ok(TauVariant::A),
            "b" | "tau-b" => Ok(TauVariant::B),
            other => Err(format!("unknown tau variant `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TauGrouping {
    /// One tau per person, averaged over persons.
    #[default]
    PerPerson,
    /// A single tau over all triples.
    Pooled,
}

impl FromStr for TauGrouping {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "person" | "per-person" => Ok(TauGrouping::PerPerson),
            "pooled" => Ok(TauGrouping::Pooled),
            other => Err(format!("unknown tau grouping `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TauOptions {
    pub variant: TauVariant,
    pub grouping: TauGrouping,
    /// Let single-triple groups contribute a tau of 0 instead of skipping them.
    pub include_singletons: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TauSummary {
    pub tau: f64,
    /// Groups that contributed to the mean.
    pub groups: usize,
    /// Contributing groups whose tau was undefined (a constant ranking) and counted as 0.
    pub undefined: usize,
    pub warnings: Vec<String>,
}

/// Pair statistics of two score vectors, from their 8x8 contingency table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    pub pairs: u64,
    pub concordant: u64,
    pub discordant: u64,
    /// Pairs tied in the first vector.
    pub ties_x: u64,
    /// Pairs tied in the second vector.
    pub ties_y: u64,
}

impl PairCounts {
    pub fn from_scores(xs: &[Score], ys: &[Score]) -> PairCounts {
        assert_eq!(xs.len(), ys.len());
        let mut table = [[0u64; 8]; 8];
        for (x, y) in xs.iter().zip(ys) {
            table[x.get() as usize][y.get() as usize] += 1;
        }
        // above[i][j]: cells with row > i and column > j; below[i][j]: row > i, column < j.
        let mut concordant = 0;
        let mut discordant = 0;
        for i in 0..8 {
            for j in 0..8 {
                let n = table[i][j];
                if n == 0 {
                    continue;
                }
                for row in table.iter().skip(i + 1) {
                    concordant += n * row[j + 1..].iter().sum::<u64>();
                    discordant += n * row[..j].iter().sum::<u64>();
                }
            }
        }
        let choose2 = |k: u64| k * k.saturating_sub(1) / 2;
        let n = xs.len() as u64;
        let ties_x = table.iter().map(|row| choose2(row.iter().sum())).sum();
        let ties_y = (0..8)
            .map(|j| choose2(table.iter().map(|row| row[j]).sum()))
            .sum();
        PairCounts {
            pairs: choose2(n),
            concordant,
            discordant,
            ties_x,
            ties_y,
        }
    }

    /// `None` when the statistic is undefined.
    pub fn tau(&self, variant: TauVariant) -> Option<f64> {
        let numerator = self.concordant as f64 - self.discordant as f64;
        match variant {
            TauVariant::A => (self.pairs > 0).then(|| numerator / self.pairs as f64),
            TauVariant::B => {
                let denominator = (self.pairs - self.ties_x) * (self.pairs - self.ties_y);
                (denominator > 0).then(|| numerator / (denominator as f64).sqrt())
            }
        }
    }
}

/// Kendall rank correlation between predicted and gold scores.
///
/// Per-person grouping computes one tau over each person's values and averages
/// over persons (in person order). Groups of one triple are skipped unless
/// `include_singletons` is set; a group whose tau is undefined counts as 0.
/// With no contributing group the result is 0 and a warning is recorded.
pub fn kendall_tau(
    pred: &ScoreTable,
    gold: &ScoreTable,
    options: TauOptions,
) -> Result<TauSummary> {
    let judged = align(pred, gold)?;
    let mut groups: BTreeMap<&str, (Vec<Score>, Vec<Score>)> = BTreeMap::new();
    for j in &judged {
        let key = match options.grouping {
            TauGrouping::PerPerson => j.person,
            TauGrouping::Pooled => "",
        };
        let group = groups.entry(key).or_default();
        group.0.push(j.predicted);
        group.1.push(j.gold);
    }

    let mut summary = TauSummary::default();
    let mut sum = 0.0;
    for (xs, ys) in groups.values() {
        if xs.len() < 2 && !options.include_singletons {
            continue;
        }
        let tau = PairCounts::from_scores(xs, ys).tau(options.variant);
        if tau.is_none() {
            summary.undefined += 1;
        }
        sum += tau.unwrap_or(0.0);
        summary.groups += 1;
    }
    if summary.groups == 0 {
        summary
            .warnings
            .push("no group has two or more triples; kendall tau reported as 0".into());
    } else {
        summary.tau = sum / summary.groups as f64;
    }
    Ok(summary)
}
