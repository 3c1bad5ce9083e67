use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::eval::{align, ScoreTable};
use crate::model::Score;

/// Counts of (gold score, predicted score) pairs; rows are gold, columns predicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    pub cells: [[u64; 8]; 8],
}

impl ConfusionMatrix {
    pub fn get(&self, gold: u8, predicted: u8) -> u64 {
        self.cells[gold as usize][predicted as usize]
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }

    /// Gold score histogram.
    pub fn row_sums(&self) -> [u64; 8] {
        self.cells.map(|row| row.iter().sum())
    }

    /// Predicted score histogram.
    pub fn column_sums(&self) -> [u64; 8] {
        std::array::from_fn(|j| self.cells.iter().map(|row| row[j]).sum())
    }

    pub fn diagonal(&self) -> u64 {
        (0..8).map(|i| self.cells[i][i]).sum()
    }

    /// TSV with a header of predicted scores and one row per gold score.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("true\\pred");
        for p in 0..8 {
            let _ = write!(out, "\t{p}");
        }
        out.push('\n');
        for (t, row) in self.cells.iter().enumerate() {
            let _ = write!(out, "{t}");
            for n in row {
                let _ = write!(out, "\t{n}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the layout written by [`to_tsv`](Self::to_tsv); `#` lines are ignored.
    pub fn from_tsv(text: &str, origin: &str) -> Result<ConfusionMatrix> {
        let mut matrix = ConfusionMatrix::default();
        let mut rows = 0;
        let mut header_seen = false;
        for (i, line) in text.lines().enumerate() {
            let number = i as u64 + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if !header_seen {
                header_seen = true;
                let expected: Vec<String> = (0..8).map(|p| p.to_string()).collect();
                if fields.len() != 9 || fields[1..] != expected {
                    return Err(Error::parse(
                        origin,
                        number,
                        "header must list predicted scores 0..7",
                    ));
                }
                continue;
            }
            if fields.len() != 9 {
                return Err(Error::parse(
                    origin,
                    number,
                    format!("expected 9 fields, found {}", fields.len()),
                ));
            }
            let gold: Score = fields[0]
                .parse()
                .map_err(|m: String| Error::parse(origin, number, m))?;
            for (p, field) in fields[1..].iter().enumerate() {
                matrix.cells[gold.get() as usize][p] = field
                    .parse()
                    .map_err(|_| Error::parse(origin, number, format!("bad count `{field}`")))?;
            }
            rows += 1;
        }
        if rows != 8 {
            return Err(Error::parse(
                origin,
                0,
                format!("expected 8 rows, found {rows}"),
            ));
        }
        Ok(matrix)
    }
}

/// Tallies gold against predicted scores over the aligned triples.
pub fn confusion(pred: &ScoreTable, gold: &ScoreTable) -> Result<ConfusionMatrix> {
    let mut matrix = ConfusionMatrix::default();
    for j in align(pred, gold)? {
        matrix.cells[j.gold.get() as usize][j.predicted.get() as usize] += 1;
    }
    Ok(matrix)
}
