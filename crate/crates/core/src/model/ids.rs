use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A Freebase machine identifier such as `/m/014zcr`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct EntityId(String);

impl EntityId {
    pub const PREFIX: &'static str = "/m/";

    pub fn new(mid: impl Into<String>) -> Result<Self, InvalidEntityId> {
        let mid = mid.into();
        let valid = mid.strip_prefix(Self::PREFIX).is_some_and(|rest| {
            !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
        });
        if valid {
            Ok(EntityId(mid))
        } else {
            Err(InvalidEntityId(mid))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for EntityId {
    type Err = InvalidEntityId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntityId::new(s)
    }
}

impl TryFrom<String> for EntityId {
    type Error = InvalidEntityId;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        EntityId::new(s)
    }
}

impl From<EntityId> for String {
    fn from(id: EntityId) -> String {
        id.0
    }
}

impl AsRef<str> for EntityId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid Freebase MID `{0}` (expected /m/ followed by [0-9a-z_]+)")]
pub struct InvalidEntityId(pub String);

/// The two triple relations that get scored.
///
/// Variant order is the output order (`nationality` sorts before `profession`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Nationality,
    Profession,
}

impl Relation {
    pub const ALL: [Relation; 2] = [Relation::Profession, Relation::Nationality];

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Profession => "profession",
            Relation::Nationality => "nationality",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "profession" => Ok(Relation::Profession),
            "nationality" => Ok(Relation::Nationality),
            other => Err(format!("unknown relation `{other}`")),
        }
    }
}

/// How a catalog entry's Freebase id was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Found by automated lookup.
    Auto,
    /// Taken from the page a redirect points at (e.g. activist -> activism).
    Redirect,
    /// Looked up or confirmed by hand.
    #[default]
    Manual,
    /// Deliberately shared with other labels (e.g. book editor / film editor -> editor).
    Shared,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Auto => "auto",
            Provenance::Redirect => "redirect",
            Provenance::Manual => "manual",
            Provenance::Shared => "shared",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Provenance::Auto),
            "redirect" => Ok(Provenance::Redirect),
            "manual" => Ok(Provenance::Manual),
            "shared" => Ok(Provenance::Shared),
            other => Err(format!("unknown provenance `{other}`")),
        }
    }
}

/// An integer relevance score in `0..=7`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(try_from = "u8", into = "u8")]
pub struct Score(u8);

impl Score {
    pub const MIN: Score = Score(0);
    pub const MAX: Score = Score(7);

    pub fn new(value: u8) -> Option<Score> {
        (value <= 7).then_some(Score(value))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Every score from 0 through 7.
    pub fn all() -> impl Iterator<Item = Score> {
        (0..=7).map(Score)
    }
}

impl TryFrom<u8> for Score {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Score::new(value).ok_or_else(|| format!("score {value} outside 0..=7"))
    }
}

impl From<Score> for u8 {
    fn from(s: Score) -> u8 {
        s.0
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Score {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value: u8 = s
            .trim()
            .parse()
            .map_err(|_| format!("score `{s}` is not an integer in 0..=7"))?;
        Score::try_from(value)
    }
}
