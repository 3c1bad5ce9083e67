use std::io::BufRead;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::facc1::{Annotation, AsAnnotation, Separator};

/// What to do with a line that does not parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorPolicy {
    /// Log it, count it, and move on.
    Skip,
    /// Stop with the parse error.
    #[default]
    Abort,
}

impl FromStr for ErrorPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "skip" => Ok(ErrorPolicy::Skip),
            "abort" => Ok(ErrorPolicy::Abort),
            other => Err(format!(
                "unknown error policy `{other}` (expected skip or abort)"
            )),
        }
    }
}

/// A parsed annotation together with the exact line it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotationLine {
    pub number: u64,
    /// Original line bytes without the line terminator.
    pub raw: String,
    pub record: Annotation,
}

impl AsAnnotation for AnnotationLine {
    fn annotation(&self) -> &Annotation {
        &self.record
    }

    fn line_number(&self) -> u64 {
        self.number
    }
}

/// Streams annotation lines from a reader, applying an [`ErrorPolicy`].
///
/// Blank lines are ignored. Iterate by `&mut` to read [`skipped`](Self::skipped)
/// afterwards.
pub struct AnnotationReader<R> {
    reader: R,
    origin: String,
    separator: Separator,
    policy: ErrorPolicy,
    line_number: u64,
    skipped: u64,
    buf: String,
    done: bool,
}

impl<R: BufRead> AnnotationReader<R> {
    pub fn new(
        reader: R,
        origin: impl Into<String>,
        separator: Separator,
        policy: ErrorPolicy,
    ) -> Self {
        AnnotationReader {
            reader,
            origin: origin.into(),
            separator,
            policy,
            line_number: 0,
            skipped: 0,
            buf: String::new(),
            done: false,
        }
    }

    /// Starts numbering at `first_line` (used when reading a shard of a larger file).
    pub fn starting_at(mut self, first_line: u64) -> Self {
        self.line_number = first_line.saturating_sub(1);
        self
    }

    /// Number of malformed lines dropped under [`ErrorPolicy::Skip`].
    pub fn skipped(&self) -> u64 {
        self.skipped
    }

    pub fn lines_read(&self) -> u64 {
        self.line_number
    }
}

impl<R: BufRead> Iterator for AnnotationReader<R> {
    type Item = Result<AnnotationLine>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => self.done = true,
                Ok(_) => {
                    self.line_number += 1;
                    let line = self.buf.trim_end_matches(['\n', '\r']);
                    if line.trim().is_empty() {
                        continue;
                    }
                    match Annotation::parse(line, self.separator) {
                        Ok(record) => {
                            return Some(Ok(AnnotationLine {
                                number: self.line_number,
                                raw: line.to_string(),
                                record,
                            }))
                        }
                        Err(msg) => match self.policy {
                            ErrorPolicy::Skip => {
                                self.skipped += 1;
                                log::warn!(
                                    "{}:{}: skipping line: {msg}",
                                    self.origin,
                                    self.line_number
                                );
                            }
                            ErrorPolicy::Abort => {
                                self.done = true;
                                return Some(Err(Error::parse(
                                    self.origin.clone(),
                                    self.line_number,
                                    msg,
                                )));
                            }
                        },
                    }
                }
                Err(e) => {
                    self.done = true;
                    return Some(Err(Error::parse(
                        self.origin.clone(),
                        self.line_number + 1,
                        e.to_string(),
                    )));
                }
            }
        }
        None
    }
}
