use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::EntityId;

/// Field separator of an annotation file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Separator {
    /// The distributed corpus format.
    #[default]
    Tab,
    /// `a, b, c` as used in hand-written fixtures; fields are trimmed.
    Comma,
}

impl Separator {
    pub fn byte(self) -> u8 {
        match self {
            Separator::Tab => b'\t',
            Separator::Comma => b',',
        }
    }

    fn joiner(self) -> &'static str {
        match self {
            Separator::Tab => "\t",
            Separator::Comma => ", ",
        }
    }
}

impl FromStr for Separator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "tab" => Ok(Separator::Tab),
            "comma" => Ok(Separator::Comma),
            other => Err(format!(
                "unknown separator `{other}` (expected tab or comma)"
            )),
        }
    }
}

pub const FIELD_COUNT: usize = 8;

/// One entity-link annotation: a mention of a Freebase entity in a web document.
#[derive(Debug, Clone, PartialEq)]
pub struct Annotation {
    pub doc_id: String,
    pub encoding: String,
    /// The exact mention text.
    pub surface: String,
    /// Byte offset of the first mention byte.
    pub begin: u64,
    /// Byte offset one past the mention; always greater than `begin`.
    pub end: u64,
    /// Posterior of the entity given mention text and context.
    pub p_text_ctx: f64,
    /// Posterior of the entity given the context only.
    pub p_ctx: f64,
    pub entity: EntityId,
}

impl Annotation {
    /// Parses one line without location information; see [`parse_line`].
    pub fn parse(line: &str, separator: Separator) -> std::result::Result<Self, String> {
        let line = line.strip_suffix('\n').unwrap_or(line);
        let line = line.strip_suffix('\r').unwrap_or(line);
        let mut fields: [&str; FIELD_COUNT] = [""; FIELD_COUNT];
        let mut count = 0;
        for field in line.split(separator.byte() as char) {
            if count < FIELD_COUNT {
                fields[count] = match separator {
                    Separator::Tab => field,
                    Separator::Comma => field.trim(),
                };
            }
            count += 1;
        }
        if count != FIELD_COUNT {
            return Err(format!("expected {FIELD_COUNT} fields, found {count}"));
        }
        let [doc_id, encoding, surface, begin, end, p_text_ctx, p_ctx, entity] = fields;

        if doc_id.is_empty() {
            return Err("empty document id".into());
        }
        let begin: u64 = begin
            .parse()
            .map_err(|_| format!("begin offset `{begin}` is not a non-negative integer"))?;
        let end: u64 = end
            .parse()
            .map_err(|_| format!("end offset `{end}` is not a non-negative integer"))?;
        if end <= begin {
            return Err(format!(
                "end offset {end} is not after begin offset {begin}"
            ));
        }
        let p_text_ctx = probability(p_text_ctx)?;
        let p_ctx = probability(p_ctx)?;
        let entity = EntityId::new(entity).map_err(|e| e.to_string())?;

        Ok(Annotation {
            doc_id: doc_id.to_string(),
            encoding: encoding.to_string(),
            surface: surface.to_string(),
            begin,
            end,
            p_text_ctx,
            p_ctx,
            entity,
        })
    }

    /// Renders the record as one line (no trailing newline).
    pub fn to_line(&self, separator: Separator) -> String {
        let sep = separator.joiner();
        let mut out = String::with_capacity(96);
        let _ = write!(
            out,
            "{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}",
            self.doc_id,
            self.encoding,
            self.surface,
            self.begin,
            self.end,
            self.p_text_ctx,
            self.p_ctx,
            self.entity
        );
        out
    }
}

fn probability(field: &str) -> std::result::Result<f64, String> {
    let p: f64 = field
        .parse()
        .map_err(|_| format!("probability `{field}` is not a number"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("probability {field} outside [0, 1]"))
    }
}

/// Parses one annotation line, reporting failures against `line_number`.
pub fn parse_line(line: &str, line_number: u64, separator: Separator) -> Result<Annotation> {
    Annotation::parse(line, separator).map_err(|msg| Error::parse("annotation", line_number, msg))
}

/// Anything that carries an annotation record.
pub trait AsAnnotation {
    fn annotation(&self) -> &Annotation;

    /// Source line, when known (0 otherwise).
    fn line_number(&self) -> u64 {
        0
    }
}

impl AsAnnotation for Annotation {
    fn annotation(&self) -> &Annotation {
        self
    }
}

impl<T: AsAnnotation> AsAnnotation for &T {
    fn annotation(&self) -> &Annotation {
        (*self).annotation()
    }

    fn line_number(&self) -> u64 {
        (*self).line_number()
    }
}
