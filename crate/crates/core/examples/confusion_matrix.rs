//! Tallies gold against predicted scores and reads a stored matrix back.
//!
//! ```text
//! cargo run --example confusion_matrix
//! ```

use std::collections::BTreeMap;

use triplerank::eval::{confusion, ConfusionMatrix};
use triplerank::model::Score;

fn main() -> triplerank::Result<()> {
    let s = |v| Score::new(v).expect("0..=7");
    let key = |p: &str, v: &str| (p.to_string(), v.to_string());
    let gold = BTreeMap::from([
        (key("Ada", "Actor"), s(7)),
        (key("Ada", "Singer"), s(2)),
        (key("Bram", "Politician"), s(5)),
        (key("Bram", "Writer"), s(0)),
    ]);
    let pred = BTreeMap::from([
        (key("Ada", "Actor"), s(7)),
        (key("Ada", "Singer"), s(0)),
        (key("Bram", "Politician"), s(0)),
        (key("Bram", "Writer"), s(0)),
    ]);

    let matrix = confusion(&pred, &gold)?;
    print!("{}", matrix.to_tsv());
    let column0 = matrix.column_sums()[0];
    println!(
        "{} of {} predicted zeros are wrong; {} of {} triples exact",
        column0 - matrix.get(0, 0),
        column0,
        matrix.diagonal(),
        matrix.total()
    );

    let back = ConfusionMatrix::from_tsv(&matrix.to_tsv(), "memory")?;
    assert_eq!(back, matrix);
    Ok(())
}
