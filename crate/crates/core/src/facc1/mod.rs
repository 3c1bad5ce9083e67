//! Entity-link annotation corpora: the record format, streaming reader,
//! filtering passes and corpus utilities.

mod corpus;
mod filter;
mod record;
mod stream;

pub use corpus::{
    corpus_stats, sample_documents, shard_ranges, split_documents, CorpusStats, DocOrder,
    PreprocessReport, Preprocessor, SampleMode,
};
pub use filter::{
    filter_pass1, filter_pass2, keep_documents, pass1, pass2, pass2_unordered,
    qualifying_documents, FilterSpec, Pass2,
};
pub use record::{parse_line, Annotation, AsAnnotation, Separator, FIELD_COUNT};
pub use stream::{AnnotationLine, AnnotationReader, ErrorPolicy};
