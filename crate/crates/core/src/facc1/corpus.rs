//! Whole-corpus operations: statistics, document sampling, document-aligned
//! sharding, and the two-pass preprocessing driver.

use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::ops::Range;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::facc1::{
    filter_pass1, filter_pass2, keep_documents, qualifying_documents, AnnotationReader,
    AsAnnotation, ErrorPolicy, FilterSpec, Separator,
};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CorpusStats {
    pub documents: u64,
    pub annotations: u64,
    pub annotations_per_document: f64,
}

/// Counts documents (distinct ids) and annotations.
pub fn corpus_stats<I, T>(items: I) -> Result<CorpusStats>
where
    I: IntoIterator<Item = Result<T>>,
    T: AsAnnotation,
{
    let mut docs: HashSet<String> = HashSet::new();
    let mut last: Option<String> = None;
    let mut annotations = 0u64;
    for item in items {
        let item = item?;
        let doc = &item.annotation().doc_id;
        annotations += 1;
        if last.as_deref() != Some(doc.as_str()) {
            docs.insert(doc.clone());
            last = Some(doc.clone());
        }
    }
    let documents = docs.len() as u64;
    Ok(CorpusStats {
        documents,
        annotations,
        annotations_per_document: if documents == 0 {
            0.0
        } else {
            annotations as f64 / documents as f64
        },
    })
}

/// Splits a document-contiguous slice into at most `shards` pieces without
/// cutting a document.
pub fn split_documents<T: AsAnnotation>(items: &[T], shards: usize) -> Vec<&[T]> {
    let shards = shards.max(1);
    let mut out = Vec::with_capacity(shards);
    let mut start = 0;
    for i in 1..=shards {
        if start >= items.len() {
            break;
        }
        let mut end = if i == shards {
            items.len()
        } else {
            (items.len() * i / shards).max(start + 1)
        };
        while end < items.len()
            && items[end].annotation().doc_id == items[end - 1].annotation().doc_id
        {
            end += 1;
        }
        out.push(&items[start..end]);
        start = end;
    }
    out
}

/// How to pick a partial corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// The first `docs` documents.
    First { docs: usize },
    /// `docs` documents drawn uniformly without replacement, kept in input order.
    Uniform { docs: usize, seed: u64 },
}

/// Selects whole documents from a document-contiguous slice.
pub fn sample_documents<T: AsAnnotation + Clone>(items: &[T], mode: SampleMode) -> Vec<T> {
    let groups = split_documents(items, items.len().max(1));
    let chosen: Vec<usize> = match mode {
        SampleMode::First { docs } => (0..docs.min(groups.len())).collect(),
        SampleMode::Uniform { docs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut idx =
                rand::seq::index::sample(&mut rng, groups.len(), docs.min(groups.len())).into_vec();
            idx.sort_unstable();
            idx
        }
    };
    chosen
        .into_iter()
        .flat_map(|i| groups[i].iter().cloned())
        .collect()
}

/// Byte ranges of `data` holding whole lines, with no document split across
/// ranges (assuming document-contiguous input).
pub fn shard_ranges(data: &[u8], shards: usize, separator: Separator) -> Vec<Range<usize>> {
    let shards = shards.max(1);
    let doc_of = |start: usize| -> &[u8] {
        let line = &data[start..];
        let line_end = memchr(b'\n', line).unwrap_or(line.len());
        let line = &line[..line_end];
        let field_end = memchr(separator.byte(), line).unwrap_or(line.len());
        trim_ascii(&line[..field_end])
    };
    let next_line =
        |pos: usize| -> usize { memchr(b'\n', &data[pos..]).map_or(data.len(), |i| pos + i + 1) };

    let mut out = Vec::with_capacity(shards);
    let mut start = 0;
    for i in 1..shards {
        if start >= data.len() {
            break;
        }
        let target = (data.len() * i / shards).max(start);
        // Back up to the start of the line containing `target`.
        let mut cut = data[..target]
            .iter()
            .rposition(|&b| b == b'\n')
            .map_or(0, |p| p + 1)
            .max(start);
        if cut == start {
            cut = next_line(start);
        }
        // Move forward while the line at `cut` continues the previous document.
        while cut < data.len() {
            let prev_start = data[..cut - 1]
                .iter()
                .rposition(|&b| b == b'\n')
                .map_or(0, |p| p + 1);
            if doc_of(prev_start) != doc_of(cut) {
                break;
            }
            cut = next_line(cut);
        }
        out.push(start..cut);
        start = cut;
    }
    if start < data.len() || out.is_empty() {
        out.push(start..data.len());
    }
    out
}

fn memchr(needle: u8, haystack: &[u8]) -> Option<usize> {
    haystack.iter().position(|&b| b == needle)
}

fn trim_ascii(bytes: &[u8]) -> &[u8] {
    let start = bytes
        .iter()
        .position(|b| !b.is_ascii_whitespace())
        .unwrap_or(bytes.len());
    let end = bytes
        .iter()
        .rposition(|b| !b.is_ascii_whitespace())
        .map_or(start, |p| p + 1);
    &bytes[start..end]
}

/// Whether the input groups each document's lines together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DocOrder {
    /// Each document's lines are adjacent; one document is buffered at a time.
    #[default]
    Contiguous,
    /// Any order; a first scan finds qualifying documents, a second filters.
    Any,
}

/// Line counts reported by [`Preprocessor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PreprocessReport {
    pub lines_read: u64,
    pub skipped: u64,
    pub after_pass1: u64,
    pub after_pass2: u64,
}

impl PreprocessReport {
    fn add(mut self, other: PreprocessReport) -> Self {
        self.lines_read += other.lines_read;
        self.skipped += other.skipped;
        self.after_pass1 += other.after_pass1;
        self.after_pass2 += other.after_pass2;
        self
    }
}

/// Runs parse, pass 1 and pass 2 over an annotation corpus, writing the
/// surviving lines byte-for-byte.
#[derive(Debug, Clone)]
pub struct Preprocessor<'a> {
    pub spec: &'a FilterSpec,
    pub separator: Separator,
    pub policy: ErrorPolicy,
    pub order: DocOrder,
}

impl<'a> Preprocessor<'a> {
    pub fn new(spec: &'a FilterSpec) -> Self {
        Preprocessor {
            spec,
            separator: Separator::Tab,
            policy: ErrorPolicy::Abort,
            order: DocOrder::Contiguous,
        }
    }

    /// Streams a document-contiguous corpus from `reader` to `writer`.
    pub fn run_stream<R: BufRead, W: Write>(
        &self,
        reader: R,
        origin: &str,
        first_line: u64,
        writer: &mut W,
    ) -> Result<PreprocessReport> {
        let mut source = AnnotationReader::new(reader, origin, self.separator, self.policy)
            .starting_at(first_line);
        let mut after_pass1 = 0u64;
        let mut after_pass2 = 0u64;
        {
            let stage1 = filter_pass1(&mut source, self.spec).inspect(|item| {
                if item.is_ok() {
                    after_pass1 += 1;
                }
            });
            for item in filter_pass2(stage1, self.spec) {
                let line = item?;
                after_pass2 += 1;
                writer
                    .write_all(line.raw.as_bytes())
                    .and_then(|_| writer.write_all(b"\n"))
                    .map_err(|e| Error::io(origin, e))?;
            }
        }
        Ok(PreprocessReport {
            lines_read: source.lines_read() - first_line.saturating_sub(1),
            skipped: source.skipped(),
            after_pass1,
            after_pass2,
        })
    }

    /// Filters an in-memory corpus, splitting it into document-aligned shards
    /// processed in parallel; output is concatenated in shard order.
    pub fn run_bytes(
        &self,
        data: &[u8],
        origin: &str,
        shards: usize,
    ) -> Result<(Vec<u8>, PreprocessReport)> {
        if self.order == DocOrder::Any {
            return self.run_any_order(data, origin);
        }
        let ranges = shard_ranges(data, shards, self.separator);
        let first_lines: Vec<u64> = ranges
            .iter()
            .scan(1u64, |line, r| {
                let first = *line;
                *line += data[r.clone()].iter().filter(|&&b| b == b'\n').count() as u64;
                Some(first)
            })
            .collect();
        let results: Vec<Result<(Vec<u8>, PreprocessReport)>> = ranges
            .par_iter()
            .zip(first_lines.par_iter())
            .map(|(range, &first)| {
                let mut out = Vec::with_capacity(range.len() / 2);
                let report = self.run_stream(&data[range.clone()], origin, first, &mut out)?;
                Ok((out, report))
            })
            .collect();
        let mut output = Vec::new();
        let mut report = PreprocessReport::default();
        for result in results {
            let (bytes, r) = result?;
            output.extend_from_slice(&bytes);
            report = report.add(r);
        }
        Ok((output, report))
    }

    fn run_any_order(&self, data: &[u8], origin: &str) -> Result<(Vec<u8>, PreprocessReport)> {
        let reader = || AnnotationReader::new(data, origin, self.separator, self.policy);
        let docs = qualifying_documents(filter_pass1(reader(), self.spec), self.spec)?;
        let mut source = reader();
        let mut after_pass1 = 0u64;
        let mut output = Vec::new();
        let mut after_pass2 = 0u64;
        {
            let stage1 = filter_pass1(&mut source, self.spec).inspect(|item| {
                if item.is_ok() {
                    after_pass1 += 1;
                }
            });
            for item in keep_documents(stage1, &docs) {
                let line = item?;
                after_pass2 += 1;
                output.extend_from_slice(line.raw.as_bytes());
                output.push(b'\n');
            }
        }
        Ok((
            output,
            PreprocessReport {
                lines_read: source.lines_read(),
                skipped: source.skipped(),
                after_pass1,
                after_pass2,
            },
        ))
    }
}
