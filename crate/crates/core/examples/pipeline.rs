//! Runs every stage from a TOML config: filter, index, score and, with gold
//! scores present, evaluate.
//!
//! ```text
//! cargo run --example pipeline -- [config.toml] [out_dir]
//! ```

use std::path::PathBuf;

use triplerank::cli::{run_pipeline, RunConfig};

fn main() -> triplerank::Result<()> {
    let mut args = std::env::args_os().skip(1).map(PathBuf::from);
    let config_path = args.next().unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/mini/pipeline.toml")
    });
    let mut config = RunConfig::from_file(&config_path)?;
    config.out_dir = args
        .next()
        .unwrap_or_else(|| std::env::temp_dir().join("triplerank-pipeline"));

    let summary = run_pipeline(&config.validate()?)?;
    println!(
        "{} annotation lines read, {} kept; {} triples scored, {} by default",
        summary.preprocess.lines_read,
        summary.preprocess.after_pass2,
        summary.triples,
        summary.defaulted
    );
    for row in &summary.eval {
        println!(
            "{:<12} n={:<4} accuracy {:.2}  asd {:.2}  tau {:.2}",
            row.relation, row.triples, row.accuracy, row.asd, row.kendall_tau
        );
    }
    for path in &summary.outputs {
        println!("wrote {}", path.display());
    }
    Ok(())
}
