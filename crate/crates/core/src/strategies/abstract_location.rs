use std::collections::BTreeMap;

use crate::model::Score;

/// A value that can be found in an abstract: its label plus alternative forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MentionCandidate {
    pub label: String,
    pub aliases: Vec<String>,
}

impl MentionCandidate {
    pub fn new(label: impl Into<String>) -> Self {
        MentionCandidate {
            label: label.into(),
            aliases: Vec::new(),
        }
    }

    pub fn with_aliases<S: Into<String>>(
        label: impl Into<String>,
        aliases: impl IntoIterator<Item = S>,
    ) -> Self {
        MentionCandidate {
            label: label.into(),
            aliases: aliases.into_iter().map(Into::into).collect(),
        }
    }

    fn forms(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.label.as_str()).chain(self.aliases.iter().map(String::as_str))
    }
}

/// Earliest case-insensitive, whole-word occurrence of `needle` in
/// `haystack`. Both must already be lowercased.
fn first_word_match(haystack: &str, needle: &str) -> Option<usize> {
    if needle.is_empty() {
        return None;
    }
    let mut from = 0;
    while let Some(rel) = haystack[from..].find(needle) {
        let pos = from + rel;
        let end = pos + needle.len();
        let before_ok = haystack[..pos]
            .chars()
            .next_back()
            .is_none_or(|c| !c.is_alphanumeric());
        let after_ok = haystack[end..]
            .chars()
            .next()
            .is_none_or(|c| !c.is_alphanumeric());
        if before_ok && after_ok {
            return Some(pos);
        }
        from = pos + haystack[pos..].chars().next().map_or(1, char::len_utf8);
    }
    None
}

/// Scores 7 for the candidate mentioned first in the abstract, 0 for the rest.
///
/// A candidate matches on its label or any alias, case-insensitively and on
/// word boundaries. At equal positions the longer match wins, then the
/// lexicographically smaller label. No match at all leaves every candidate at 0.
pub fn abstract_score(
    abstract_text: &str,
    candidates: &[MentionCandidate],
) -> BTreeMap<String, Score> {
    let text = abstract_text.to_lowercase();
    let mut best: Option<(usize, std::cmp::Reverse<usize>, &str)> = None;
    for candidate in candidates {
        for form in candidate.forms() {
            let form = form.to_lowercase();
            if let Some(pos) = first_word_match(&text, &form) {
                let key = (pos, std::cmp::Reverse(form.len()), candidate.label.as_str());
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
    }
    let winner = best.map(|(_, _, label)| label);
    candidates
        .iter()
        .map(|c| {
            let score = if Some(c.label.as_str()) == winner {
                Score::MAX
            } else {
                Score::MIN
            };
            (c.label.clone(), score)
        })
        .collect()
}
