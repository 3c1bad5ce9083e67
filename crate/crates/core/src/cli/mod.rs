//! The `triplerank` command line: one subcommand per pipeline stage plus a
//! `pipeline` command that runs them all from a config file.
//!
//! Exit status is 0 on success, 1 on usage or validation errors and 2 on
//! I/O or parse failures. Logs go to standard error.

mod commands;
mod config;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use commands::{relation_path, run_pipeline, PipelineSummary};
pub use config::{RunConfig, ValidatedRun};

use crate::eval::{ReportFormat, TauGrouping, TauVariant};
use crate::facc1::{ErrorPolicy, Separator};
use crate::model::{Relation, Score};
use crate::strategies::StrategySelection;

#[derive(Debug, Parser)]
#[command(
    name = "triplerank",
    version,
    about = "Score person/profession and person/nationality triples from entity-link co-occurrences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filter an annotation corpus to catalog entities, then to co-occurrence documents.
    Preprocess(PreprocessArgs),
    /// Build the person -> entity co-occurrence index from a filtered corpus.
    Index(IndexArgs),
    /// Score every knowledge-base triple.
    Score(ScoreArgs),
    /// Compare predictions with gold scores.
    Evaluate(EvaluateArgs),
    /// Print the 8x8 gold-by-predicted confusion matrix.
    Confusion(ConfusionArgs),
    /// Take a partial corpus of whole documents.
    Sample(SampleArgs),
    /// Count how often each catalog id occurs in a corpus.
    VerifyIds(VerifyIdsArgs),
    /// Count documents and annotations of a corpus.
    Stats(StatsArgs),
    /// Run preprocess, index, score, evaluate and confusion from one config file.
    Pipeline(PipelineArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CorpusFormat {
    /// Field separator of the annotation file: tab or comma.
    #[arg(long, default_value = "tab")]
    pub separator: Separator,
    /// What to do with malformed annotation lines: skip or abort.
    #[arg(long = "on-parse-error", default_value = "abort")]
    pub on_parse_error: ErrorPolicy,
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    /// Directory with persons.tsv, professions.tsv, nationalities.tsv and nationality_lexicon.tsv.
    #[arg(long)]
    pub catalog_dir: PathBuf,
    /// Annotation corpus (.gz is decompressed).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Filtered output (.gz is compressed).
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub format: CorpusFormat,
    /// Whether each document's lines are adjacent; false uses two scans.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub sorted: bool,
    /// Number of document-aligned shards processed in parallel.
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(long)]
    pub catalog_dir: PathBuf,
    /// Filtered annotation corpus.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Index output (TSV).
    #[arg(long)]
    pub out: PathBuf,
    /// Count co-occurring documents instead of annotations.
    #[arg(long)]
    pub doc_level: bool,
    /// Number of document-aligned shards built in parallel and merged.
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// Whether each document's lines are adjacent; false groups them in memory first.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub sorted: bool,
    #[command(flatten)]
    pub format: CorpusFormat,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// profession, nationality or both. With both, --out gains a .profession/.nationality infix.
    #[arg(long, default_value = "both")]
    pub relation: String,
    /// Score for triples without evidence from either strategy (0..=7).
    #[arg(long = "default", default_value_t = 4)]
    pub default_score: u8,
    /// Co-occurrence index (required unless --strategy abstracts).
    #[arg(long)]
    pub index: Option<PathBuf>,
    /// Abstracts file (required unless --strategy counts).
    #[arg(long)]
    pub abstracts: Option<PathBuf>,
    /// Directory with profession.kb and nationality.kb.
    #[arg(long)]
    pub kb_dir: PathBuf,
    /// Catalog directory; defaults to --kb-dir.
    #[arg(long)]
    pub catalog_dir: Option<PathBuf>,
    /// Prediction output.
    #[arg(long)]
    pub out: PathBuf,
    /// abstracts, counts or both.
    #[arg(long, default_value = "both")]
    pub strategy: StrategySelection,
    /// Append abstract_score, count_score and defaulted columns.
    #[arg(long)]
    pub provenance: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TauArgs {
    /// Kendall tau variant: b (tie-corrected) or a.
    #[arg(long, default_value = "b")]
    pub tau_variant: TauVariant,
    /// Group tau per person and average (person) or compute one pooled tau (pooled).
    #[arg(long, default_value = "person")]
    pub tau_grouping: TauGrouping,
    /// Let persons with a single triple contribute a tau of 0.
    #[arg(long)]
    pub include_singletons: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Predictions; with --relation both, a .profession/.nationality infix is added.
    #[arg(long)]
    pub pred: PathBuf,
    /// Gold scores; same naming rule as --pred.
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long, default_value = "both")]
    pub relation: String,
    /// Largest |predicted - gold| counted as accurate.
    #[arg(long, default_value_t = 2)]
    pub accuracy_window: u8,
    /// table, tsv or json-lines.
    #[arg(long, default_value = "table")]
    pub format: ReportFormat,
    #[command(flatten)]
    pub tau: TauArgs,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConfusionArgs {
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long, default_value = "both")]
    pub relation: String,
    /// Write the matrix here (relation infix added for both) instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Number of documents to keep.
    #[arg(long)]
    pub docs: usize,
    /// Draw documents uniformly with this seed instead of taking the first ones.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub format: CorpusFormat,
}

#[derive(Debug, Args)]
pub struct VerifyIdsArgs {
    #[arg(long)]
    pub catalog_dir: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub format: CorpusFormat,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[command(flatten)]
    pub format: CorpusFormat,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// TOML file with catalog_dir, kb_dir, corpus, abstracts, out_dir, default, strategy,
    /// relation, separator, on_parse_error, shards, doc_level, accuracy_window, provenance.
    #[arg(long)]
    pub config: PathBuf,
}

/// Parses `profession`, `nationality` or `both`.
pub fn parse_relations(s: &str) -> Result<Vec<Relation>, String> {
    match s {
        "both" => Ok(Relation::ALL.to_vec()),
        other => Ok(vec![other.parse()?]),
    }
}

pub(crate) fn parse_default(value: u8) -> crate::Result<Score> {
    Score::new(value)
        .ok_or_else(|| crate::Error::Validation(format!("default score {value} outside 0..=7")))
}

pub(crate) fn require_shards(shards: usize) -> crate::Result<usize> {
    if shards == 0 {
        Err(crate::Error::Validation(
            "--shards must be at least 1".into(),
        ))
    } else {
        Ok(shards)
    }
}

pub(crate) fn require_file(path: &Path) -> crate::Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(crate::Error::Validation(format!(
            "{} does not exist",
            path.display()
        )))
    }
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            log::error!("{e}");
            e.exit_code()
        }
    }
}
