//! The bundled corpus: group tables, character tables and G-CW complexes.

use std::sync::Arc;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

macro_rules! corpus {
    ($dir:literal, $ext:literal, [$($name:literal),* $(,)?]) => {
        &[$(($name, include_str!(concat!("../data/", $dir, "/", $name, $ext)))),*]
    };
}

/// Group tables, by name.
pub const GROUPS: &[(&str, &str)] = corpus!(
    "groups",
    ".grp",
    ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "S3", "D4", "Q8", "A4", "S4"]
);

/// Character tables of the bundled non-abelian groups.
pub const CHARACTER_TABLES: &[(&str, &str)] = corpus!("chartabs", ".ctb", ["S3", "D4", "Q8", "A4", "S4"]);

/// G-CW complexes, by name.
pub const SPACES: &[(&str, &str)] = corpus!(
    "spaces",
    ".gcw",
    [
        "reflection_circle",
        "free_circle_z4",
        "s3_triangle",
        "s3_disk",
        "dihedral_polygon",
        "d4_square",
    ]
);

/// Deliberately broken inputs used as negative controls.
pub const INVALID: &[(&str, &str)] = &[
    ("nonassoc.grp", include_str!("../data/invalid/nonassoc.grp")),
    ("S3_perturbed.ctb", include_str!("../data/invalid/S3_perturbed.ctb")),
    ("d2_nonzero.gcw", include_str!("../data/invalid/d2_nonzero.gcw")),
    ("bad_morphism.gcw", include_str!("../data/invalid/bad_morphism.gcw")),
    ("corrupt_ind.mky", include_str!("../data/invalid/corrupt_ind.mky")),
];

fn lookup(list: &'static [(&'static str, &'static str)], kind: &'static str, name: &str) -> Result<&'static str> {
    list.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Unknown {
            kind,
            name: name.to_string(),
        })
}

pub fn group_text(name: &str) -> Result<&'static str> {
    lookup(GROUPS, "group", name)
}

pub fn group(name: &str) -> Result<FiniteGroup> {
    FiniteGroup::parse(group_text(name)?)
}

pub fn character_table_text(name: &str) -> Result<&'static str> {
    lookup(CHARACTER_TABLES, "character table", name)
}

pub fn space_text(name: &str) -> Result<&'static str> {
    lookup(SPACES, "space", name)
}

pub fn invalid_text(name: &str) -> Result<&'static str> {
    lookup(INVALID, "fixture", name)
}

/// Names of bundled groups of order at most `max_order`.
pub fn group_names(max_order: usize) -> Vec<&'static str> {
    GROUPS
        .iter()
        .filter(|(_, t)| FiniteGroup::parse(t).map_or(false, |g| g.order() <= max_order))
        .map(|(n, _)| *n)
        .collect()
}

/// Parsed character tables of the bundled non-abelian groups.
pub fn character_tables() -> Result<Vec<CharacterTable>> {
    CHARACTER_TABLES
        .iter()
        .map(|(name, text)| CharacterTable::parse(text, Arc::new(group(name)?)))
        .collect()
}
