use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::io::read_tsv;
use crate::model::EntityCatalog;

/// Wikipedia abstract text per person label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbstractStore {
    texts: BTreeMap<String, String>,
}

impl AbstractStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, person: impl Into<String>, text: impl Into<String>) {
        self.texts.insert(person.into(), text.into());
    }

    /// The person's abstract, or `""` when none is known.
    pub fn get(&self, person: &str) -> &str {
        self.texts.get(person).map(String::as_str).unwrap_or("")
    }

    pub fn len(&self) -> usize {
        self.texts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.texts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.texts.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

/// Escapes backslash, tab, carriage return and newline so a text fits in one TSV field.
pub fn escape_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

/// Inverse of [`escape_text`]. Unknown escapes are kept verbatim.
pub fn unescape_text(field: &str) -> String {
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some('\\') => out.push('\\'),
            Some(other) => {
                out.push('\\');
                out.push(other);
            }
            None => out.push('\\'),
        }
    }
    out
}

/// Loads `<person>TAB<escaped abstract>` lines. Every key must be a catalog person.
pub fn load_abstracts(path: &Path, catalog: &EntityCatalog) -> Result<AbstractStore> {
    let origin = path.display().to_string();
    let mut store = AbstractStore::new();
    for line in read_tsv(path)? {
        let (person, text) = match line.fields.as_slice() {
            [person] => (person, String::new()),
            [person, text] => (person, unescape_text(text)),
            fields => {
                return Err(Error::parse(
                    &origin,
                    line.number,
                    format!("expected 2 tab-separated fields, found {}", fields.len()),
                ))
            }
        };
        if catalog.person(person).is_none() {
            return Err(Error::Validation(format!(
                "{origin}:{}: abstract for unknown person `{person}`",
                line.number
            )));
        }
        if store.texts.insert(person.clone(), text).is_some() {
            return Err(Error::Validation(format!(
                "{origin}:{}: duplicate abstract for `{person}`",
                line.number
            )));
        }
    }
    Ok(store)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn missing_abstract_is_empty() {
        let store = AbstractStore::new();
        assert_eq!(store.get("Nobody"), "");
    }

    #[test]
    fn loads_escaped_text() {
        let mut catalog = EntityCatalog::default();
        catalog.insert_person("Jane Roe", "/m/0jr").unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("abstracts.tsv");
        std::fs::write(&path, "Jane Roe\tLine one.\\nLine\\ttwo \\\\ done\n").unwrap();
        let store = load_abstracts(&path, &catalog).unwrap();
        assert_eq!(store.get("Jane Roe"), "Line one.\nLine\ttwo \\ done");

        std::fs::write(&path, "John Roe\ttext\n").unwrap();
        assert!(matches!(
            load_abstracts(&path, &catalog),
            Err(Error::Validation(_))
        ));
    }

    proptest! {
        #[test]
        fn escape_round_trips(text in "[a-z \\\\\t\n\r]{0,40}") {
            let escaped = escape_text(&text);
            prop_assert!(!escaped.contains('\t') && !escaped.contains('\n'));
            prop_assert_eq!(unescape_text(&escaped), text);
        }
    }
}
