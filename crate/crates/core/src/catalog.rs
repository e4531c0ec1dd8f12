//! Built-in tetrahedron lists and JSON catalog files.
//!
//! A catalog file is a JSON array of objects
//! `{"id": "...", "angles": [[p, q], ...6]}` in the edge order
//! `(12, 34, 13, 24, 14, 23)`, each pair a reduced fraction of π. The
//! optional fields `"expected"` (`"DoesNotTile"` or `"Inconclusive"`) and
//! `"source"` are also read.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::{AngleTuple, RationalAngle, VertexPermutation};
use crate::realnum::Precision;
use crate::tetgeom::{GeometryError, Tetrahedron};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SourceTag {
    A40,
    EXTRA2,
    SPECIFIC23,
    USER,
}

impl FromStr for SourceTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A40" => Ok(SourceTag::A40),
            "EXTRA2" => Ok(SourceTag::EXTRA2),
            "SPECIFIC23" => Ok(SourceTag::SPECIFIC23),
            "USER" => Ok(SourceTag::USER),
            _ => Err(format!("unknown catalog tag {s:?}")),
        }
    }
}

impl fmt::Display for SourceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Expected {
    DoesNotTile,
    Inconclusive,
}

impl Expected {
    pub fn label(&self) -> &'static str {
        match self {
            Expected::DoesNotTile => "DoesNotTile",
            Expected::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub angles: AngleTuple,
    pub source: SourceTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl CatalogEntry {
    pub fn tetrahedron(&self) -> Result<Tetrahedron, GeometryError> {
        Tetrahedron::new(self.angles.clone())
    }
}

/// One object of a catalog file, before geometric validation.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    angles: [RationalAngle; 6],
    #[serde(default)]
    expected: Option<Expected>,
    #[serde(default)]
    source: Option<SourceTag>,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("catalog parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// An entry that was read but rejected as geometry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkippedEntry {
    pub index: usize,
    pub id: String,
    pub reason: String,
    /// Rejected because the precision cap was reached, not on proof.
    pub precision_exhausted: bool,
}

/// Two entries whose tuples differ only by a vertex relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Duplicate {
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub skipped: Vec<SkippedEntry>,
    pub duplicates: Vec<Duplicate>,
}

/// Lexicographically smallest relabeling; equal for tuples related by a relabeling.
pub fn canonical_form(angles: &AngleTuple) -> AngleTuple {
    VertexPermutation::all()
        .iter()
        .map(|s| angles.permuted(s))
        .min()
        .expect("24 relabelings")
}

fn find_duplicates(entries: &[CatalogEntry]) -> Vec<Duplicate> {
    let mut seen: HashMap<AngleTuple, &str> = HashMap::new();
    let mut out = Vec::new();
    for e in entries {
        let key = canonical_form(&e.angles);
        match seen.get(&key) {
            Some(first) => out.push(Duplicate {
                first: first.to_string(),
                second: e.id.clone(),
            }),
            None => {
                seen.insert(key, &e.id);
            }
        }
    }
    out
}

/// Parse catalog JSON, skipping entries that are not tetrahedra.
pub fn parse_catalog(text: &str, precision: Precision) -> Result<Catalog, CatalogError> {
    let raw: Vec<RawEntry> = serde_json::from_str(text).map_err(|e| CatalogError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut catalog = Catalog::default();
    for (index, r) in raw.into_iter().enumerate() {
        let checked = AngleTuple::new(r.angles)
            .map_err(GeometryError::from)
            .and_then(|a| Tetrahedron::with_precision(a, precision));
        match checked {
            Ok(t) => catalog.entries.push(CatalogEntry {
                id: r.id,
                angles: t.angles().clone(),
                source: r.source.unwrap_or(SourceTag::USER),
                expected: r.expected,
            }),
            Err(e) => catalog.skipped.push(SkippedEntry {
                index,
                id: r.id,
                reason: e.to_string(),
                precision_exhausted: e.is_precision_exhausted(),
            }),
        }
    }
    catalog.duplicates = find_duplicates(&catalog.entries);
    Ok(catalog)
}

pub fn load_catalog(path: impl AsRef<Path>, precision: Precision) -> Result<Catalog, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_catalog(&text, precision)
}

/// Catalog JSON for the entries, one object per line.
pub fn to_json(entries: &[CatalogEntry]) -> String {
    let rows: Vec<String> = entries
        .iter()
        .map(|e| format!("  {}", serde_json::to_string(e).expect("entries serialize")))
        .collect();
    if rows.is_empty() {
        "[]\n".to_string()
    } else {
        format!("[\n{}\n]\n", rows.join(",\n"))
    }
}

const A40_JSON: &str = include_str!("../data/a40.json");
const EXTRA2_JSON: &str = include_str!("../data/extra2.json");
const SPECIFIC23_JSON: &str = include_str!("../data/specific23.json");

/// The built-in lists. `USER` has no built-in entries.
pub fn builtin_catalog(tag: SourceTag) -> Vec<CatalogEntry> {
    let text = match tag {
        SourceTag::A40 => A40_JSON,
        SourceTag::EXTRA2 => EXTRA2_JSON,
        SourceTag::SPECIFIC23 => SPECIFIC23_JSON,
        SourceTag::USER => return vec![],
    };
    let raw: Vec<RawEntry> = serde_json::from_str(text).expect("built-in catalog parses");
    raw.into_iter()
        .map(|r| CatalogEntry {
            id: r.id,
            angles: AngleTuple::new(r.angles).expect("built-in angles are dihedral"),
            source: tag,
            expected: r.expected,
        })
        .collect()
}
