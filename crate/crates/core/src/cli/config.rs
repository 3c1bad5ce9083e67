use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::facc1::{ErrorPolicy, Separator};
use crate::model::Score;
use crate::strategies::StrategySelection;

/// Settings for the `pipeline` subcommand, read from a flat TOML file.
/// Relative paths are resolved against the file's directory.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub catalog_dir: PathBuf,
    pub kb_dir: PathBuf,
    pub corpus: PathBuf,
    #[serde(default)]
    pub abstracts: Option<PathBuf>,
    pub out_dir: PathBuf,
    #[serde(default = "default_score")]
    pub default: u8,
    #[serde(default = "default_both")]
    pub strategy: String,
    #[serde(default = "default_both")]
    pub relation: String,
    #[serde(default = "default_separator")]
    pub separator: String,
    #[serde(default = "default_policy")]
    pub on_parse_error: String,
    #[serde(default = "default_shards")]
    pub shards: usize,
    #[serde(default)]
    pub doc_level: bool,
    #[serde(default = "default_window")]
    pub accuracy_window: u8,
    #[serde(default)]
    pub provenance: bool,
}

fn default_score() -> u8 {
    4
}
fn default_both() -> String {
    "both".into()
}
fn default_separator() -> String {
    "tab".into()
}
fn default_policy() -> String {
    "abort".into()
}
fn default_shards() -> usize {
    1
}
fn default_window() -> u8 {
    2
}

/// [`RunConfig`] with every field parsed and checked.
#[derive(Debug, Clone)]
pub struct ValidatedRun {
    pub catalog_dir: PathBuf,
    pub kb_dir: PathBuf,
    pub corpus: PathBuf,
    pub abstracts: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub default_score: Score,
    pub strategy: StrategySelection,
    pub relations: Vec<crate::model::Relation>,
    pub separator: Separator,
    pub policy: ErrorPolicy,
    pub shards: usize,
    pub doc_level: bool,
    pub accuracy_window: u8,
    pub provenance: bool,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config: RunConfig = toml::from_str(&text)
            .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut config.catalog_dir,
            &mut config.kb_dir,
            &mut config.corpus,
            &mut config.out_dir,
        ] {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        if let Some(a) = config.abstracts.as_mut().filter(|a| a.is_relative()) {
            *a = base.join(&*a);
        }
        Ok(config)
    }

    /// Parses enumerations and checks that every input exists.
    pub fn validate(&self) -> Result<ValidatedRun> {
        let bad = |msg: String| Error::Validation(msg);
        let default_score = Score::new(self.default)
            .ok_or_else(|| bad(format!("default score {} outside 0..=7", self.default)))?;
        let strategy = self.strategy.parse().map_err(bad)?;
        let relations = super::parse_relations(&self.relation).map_err(bad)?;
        let separator = self.separator.parse().map_err(bad)?;
        let policy = self.on_parse_error.parse().map_err(bad)?;
        if self.shards == 0 {
            return Err(bad("shards must be at least 1".into()));
        }
        for dir in [&self.catalog_dir, &self.kb_dir] {
            if !dir.is_dir() {
                return Err(bad(format!("{} is not a directory", dir.display())));
            }
        }
        for file in std::iter::once(&self.corpus).chain(self.abstracts.as_ref()) {
            if !file.is_file() {
                return Err(bad(format!("{} does not exist", file.display())));
            }
        }
        Ok(ValidatedRun {
            catalog_dir: self.catalog_dir.clone(),
            kb_dir: self.kb_dir.clone(),
            corpus: self.corpus.clone(),
            abstracts: self.abstracts.clone(),
            out_dir: self.out_dir.clone(),
            default_score,
            strategy,
            relations,
            separator,
            policy,
            shards: self.shards,
            doc_level: self.doc_level,
            accuracy_window: self.accuracy_window,
            provenance: self.provenance,
        })
    }
}
