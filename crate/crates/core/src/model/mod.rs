//! Domain types and the loaders for catalogs, knowledge bases and abstracts.

mod abstracts;
mod catalog;
mod ids;
mod kb;
mod verify;

pub use abstracts::{escape_text, load_abstracts, unescape_text, AbstractStore};
pub use catalog::{
    load_catalog, load_catalog_dir, CatalogEntry, CatalogFiles, EntityCatalog, LEXICON_FILE,
    NATIONALITIES_FILE, PERSONS_FILE, PROFESSIONS_FILE,
};
pub use ids::{EntityId, InvalidEntityId, Provenance, Relation, Score};
pub use kb::{
    load_kb, load_kb_dir, load_score_table, KnowledgeBase, TripleKey, GOLD_FILE,
    NATIONALITY_KB_FILE, PROFESSION_KB_FILE,
};
pub use verify::{format_presence_report, verify_ids, IdPresence};
