//! Relevance scoring for (person, profession) and (person, nationality)
//! triples.
//!
//! The pipeline filters an entity-link annotation corpus down to documents in
//! which a person co-occurs with a profession or nationality, counts those
//! co-occurrences per person, and scores every candidate triple 0..=7 by
//! fusing a log-scaled count score with the position of the first mention in
//! the person's Wikipedia abstract. Predictions are evaluated with accuracy,
//! average score difference, per-person Kendall tau-b and confusion matrices.
//!
//! See the `examples/` directory for one runnable program per stage.

pub mod error;
pub mod io;

pub mod cli;
pub mod cooccur;
pub mod eval;
pub mod facc1;
pub mod model;
pub mod strategies;

pub use error::{Error, Result};
