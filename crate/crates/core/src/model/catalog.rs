use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::io::{read_tsv, TsvLine};
use crate::model::{EntityId, Provenance, Relation};

/// File names used inside a catalog directory.
pub const PERSONS_FILE: &str = "persons.tsv";
pub const PROFESSIONS_FILE: &str = "professions.tsv";
pub const NATIONALITIES_FILE: &str = "nationalities.tsv";
pub const LEXICON_FILE: &str = "nationality_lexicon.tsv";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub id: EntityId,
    pub provenance: Provenance,
}

/// Persons, professions and nationalities with their Freebase ids, plus the
/// country -> demonym lexicon used when matching nationalities in text.
///
/// Each kind is its own namespace: a label that is both a profession and a
/// nationality yields two unrelated entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EntityCatalog {
    pub persons: BTreeMap<String, CatalogEntry>,
    pub professions: BTreeMap<String, CatalogEntry>,
    pub nationalities: BTreeMap<String, CatalogEntry>,
    pub nationality_lexicon: BTreeMap<String, Vec<String>>,
}

impl EntityCatalog {
    pub fn values(&self, relation: Relation) -> &BTreeMap<String, CatalogEntry> {
        match relation {
            Relation::Profession => &self.professions,
            Relation::Nationality => &self.nationalities,
        }
    }

    pub fn person(&self, label: &str) -> Option<&CatalogEntry> {
        self.persons.get(label)
    }

    pub fn value(&self, relation: Relation, label: &str) -> Option<&CatalogEntry> {
        self.values(relation).get(label)
    }

    /// Alternative surface forms for a value; only nationalities have any.
    pub fn aliases(&self, relation: Relation, label: &str) -> &[String] {
        match relation {
            Relation::Nationality => self
                .nationality_lexicon
                .get(label)
                .map(Vec::as_slice)
                .unwrap_or(&[]),
            Relation::Profession => &[],
        }
    }

    pub fn insert_person(&mut self, label: &str, mid: &str) -> Result<()> {
        insert(&mut self.persons, "persons", label, mid, Provenance::Manual)
    }

    pub fn insert_value(
        &mut self,
        relation: Relation,
        label: &str,
        mid: &str,
        provenance: Provenance,
    ) -> Result<()> {
        let (map, kind) = match relation {
            Relation::Profession => (&mut self.professions, "professions"),
            Relation::Nationality => (&mut self.nationalities, "nationalities"),
        };
        insert(map, kind, label, mid, provenance)
    }

    pub fn add_alias(&mut self, country: &str, alias: &str) -> Result<()> {
        if alias.trim().is_empty() {
            return Err(Error::Validation(format!(
                "empty alias for country `{country}`"
            )));
        }
        let aliases = self
            .nationality_lexicon
            .entry(country.to_string())
            .or_default();
        if !aliases.iter().any(|a| a == alias) {
            aliases.push(alias.to_string());
        }
        Ok(())
    }

    /// Checks that ids are shared between entries only when every entry
    /// involved is marked [`Provenance::Shared`].
    pub fn validate(&self) -> Result<()> {
        let mut by_id: HashMap<&EntityId, Vec<(&str, &CatalogEntry)>> = HashMap::new();
        for (kind, map) in [
            ("person", &self.persons),
            ("profession", &self.professions),
            ("nationality", &self.nationalities),
        ] {
            for entry in map.values() {
                by_id.entry(&entry.id).or_default().push((kind, entry));
            }
        }
        let mut offenders: Vec<String> = by_id
            .into_iter()
            .filter(|(_, entries)| {
                entries.len() > 1
                    && entries
                        .iter()
                        .any(|(_, e)| e.provenance != Provenance::Shared)
            })
            .map(|(id, entries)| {
                let labels: Vec<String> = entries
                    .iter()
                    .map(|(kind, e)| format!("{kind} `{}` ({})", e.label, e.provenance))
                    .collect();
                format!("{id} is used by {}", labels.join(", "))
            })
            .collect();
        if offenders.is_empty() {
            Ok(())
        } else {
            offenders.sort();
            Err(Error::Validation(format!(
                "ids shared without `shared` provenance: {}",
                offenders.join("; ")
            )))
        }
    }

    /// Renders the four catalog files in their on-disk format.
    pub fn to_tsv(&self) -> CatalogFiles {
        fn entries(map: &BTreeMap<String, CatalogEntry>) -> String {
            let mut out = String::new();
            for e in map.values() {
                let _ = writeln!(out, "{}\t{}\t{}", e.label, e.id, e.provenance);
            }
            out
        }
        let mut lexicon = String::new();
        for (country, aliases) in &self.nationality_lexicon {
            for alias in aliases {
                let _ = writeln!(lexicon, "{country}\t{alias}");
            }
        }
        CatalogFiles {
            persons: entries(&self.persons),
            professions: entries(&self.professions),
            nationalities: entries(&self.nationalities),
            lexicon,
        }
    }

    /// Writes the catalog into `dir` using the standard file names.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let files = self.to_tsv();
        for (name, body) in [
            (PERSONS_FILE, &files.persons),
            (PROFESSIONS_FILE, &files.professions),
            (NATIONALITIES_FILE, &files.nationalities),
            (LEXICON_FILE, &files.lexicon),
        ] {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}

/// Serialized contents of the catalog files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogFiles {
    pub persons: String,
    pub professions: String,
    pub nationalities: String,
    pub lexicon: String,
}

fn insert(
    map: &mut BTreeMap<String, CatalogEntry>,
    kind: &str,
    label: &str,
    mid: &str,
    provenance: Provenance,
) -> Result<()> {
    if label.is_empty() {
        return Err(Error::Validation(format!("empty label in {kind}")));
    }
    let id = EntityId::new(mid).map_err(|e| Error::Validation(e.to_string()))?;
    if map.contains_key(label) {
        return Err(Error::Validation(format!(
            "duplicate label `{label}` in {kind}"
        )));
    }
    map.insert(
        label.to_string(),
        CatalogEntry {
            label: label.to_string(),
            id,
            provenance,
        },
    );
    Ok(())
}

fn parse_entries(
    lines: Vec<TsvLine>,
    origin: &str,
    kind: &str,
) -> Result<BTreeMap<String, CatalogEntry>> {
    let mut map = BTreeMap::new();
    for line in lines {
        let (label, mid, provenance) = match line.fields.as_slice() {
            [label, mid] => (label, mid, Provenance::default()),
            [label, mid, prov] => {
                let prov = prov
                    .parse()
                    .map_err(|msg| Error::parse(origin, line.number, msg))?;
                (label, mid, prov)
            }
            fields => {
                return Err(Error::parse(
                    origin,
                    line.number,
                    format!(
                        "expected 2 or 3 tab-separated fields, found {}",
                        fields.len()
                    ),
                ))
            }
        };
        if EntityId::new(mid.as_str()).is_err() {
            return Err(Error::parse(
                origin,
                line.number,
                format!("invalid Freebase MID `{mid}`"),
            ));
        }
        insert(&mut map, kind, label, mid, provenance).map_err(|e| match e {
            Error::Validation(msg) => Error::Validation(format!("{origin}:{}: {msg}", line.number)),
            other => other,
        })?;
    }
    Ok(map)
}

/// Loads the catalog from its four files.
pub fn load_catalog(
    persons_file: &Path,
    professions_file: &Path,
    nationalities_file: &Path,
    lexicon_file: &Path,
) -> Result<EntityCatalog> {
    load_parts(
        persons_file,
        professions_file,
        nationalities_file,
        Some(lexicon_file),
    )
}

/// Loads a catalog directory; a missing lexicon file means no aliases.
pub fn load_catalog_dir(dir: &Path) -> Result<EntityCatalog> {
    let lexicon = dir.join(LEXICON_FILE);
    load_parts(
        &dir.join(PERSONS_FILE),
        &dir.join(PROFESSIONS_FILE),
        &dir.join(NATIONALITIES_FILE),
        lexicon.exists().then_some(lexicon.as_path()),
    )
}

fn load_parts(
    persons_file: &Path,
    professions_file: &Path,
    nationalities_file: &Path,
    lexicon_file: Option<&Path>,
) -> Result<EntityCatalog> {
    let load =
        |path: &Path, kind: &str| parse_entries(read_tsv(path)?, &path.display().to_string(), kind);
    let mut catalog = EntityCatalog {
        persons: load(persons_file, "persons")?,
        professions: load(professions_file, "professions")?,
        nationalities: load(nationalities_file, "nationalities")?,
        nationality_lexicon: BTreeMap::new(),
    };

    if let Some(lexicon_file) = lexicon_file {
        let origin = lexicon_file.display().to_string();
        for line in read_tsv(lexicon_file)? {
            let [country, alias] = line.fields.as_slice() else {
                return Err(Error::parse(
                    &origin,
                    line.number,
                    format!(
                        "expected 2 tab-separated fields, found {}",
                        line.fields.len()
                    ),
                ));
            };
            if !catalog.nationalities.contains_key(country) {
                log::warn!(
                    "{origin}:{}: lexicon country `{country}` is not a catalog nationality",
                    line.number
                );
            }
            catalog
                .add_alias(country, alias)
                .map_err(|e| Error::parse(&origin, line.number, e.to_string()))?;
        }
    }

    catalog.validate()?;
    Ok(catalog)
}
