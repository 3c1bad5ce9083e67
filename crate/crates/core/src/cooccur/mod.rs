//! The person -> entity co-occurrence index: for each person, how often each
//! profession or nationality is annotated in documents mentioning the person.

mod build;
mod index;

pub use build::{build_index, build_index_sharded, CountMode, IndexBuilder};
pub use index::CooccurrenceIndex;
