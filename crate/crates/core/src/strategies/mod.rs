//! Scoring: the abstract-position strategy, the log-count strategy, their
//! fusion, and batch scoring of a knowledge base.

mod abstract_location;
mod batch;
mod fusion;
mod log_count;

pub use abstract_location::{abstract_score, MentionCandidate};
pub use batch::{
    format_predictions, score_all, ScoredTriple, ScoringConfig, ScoringOutput, StrategySelection,
};
pub use fusion::fuse;
pub use log_count::{count_score, scale};
