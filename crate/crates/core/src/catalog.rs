//! Normalized artifact catalog.
//!
//! Raw harvested fields are cleaned into [`ArtifactRecord`]s. Dimension
//! values are whitespace-collapsed and title-cased; a missing value becomes
//! the [`UNKNOWN`] sentinel so every record lands in exactly one bucket per
//! dimension.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dimension::{DimValues, Dimension, UNKNOWN};

pub const FIELD_TITLE: &str = "title";
pub const FIELD_ACCESSION_NO: &str = "accession_no";

/// Field map of one harvested detail page, before any cleaning.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArtifact {
    pub source_url: String,
    pub fields: BTreeMap<String, String>,
    pub fetched_at: String,
}

impl RawArtifact {
    pub fn field(&self, name: &str) -> &str {
        self.fields.get(name).map(String::as_str).unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtifactRecord {
    pub id: String,
    pub title: String,
    pub source_url: String,
    pub dims: DimValues,
    /// Optional blueprint fields (image_url, description, accession_no, ...)
    /// passed through after whitespace cleanup. Empty values are dropped.
    #[serde(default)]
    pub extras: BTreeMap<String, String>,
}

impl ArtifactRecord {
    pub fn dim(&self, d: Dimension) -> &str {
        self.dims.get(d)
    }

    /// Reconstructs the raw field map this record normalizes from.
    pub fn to_raw(&self, fetched_at: &str) -> RawArtifact {
        let mut fields = self.extras.clone();
        fields.insert(FIELD_TITLE.into(), self.title.clone());
        for d in Dimension::ALL {
            fields.insert(d.name().into(), self.dim(d).into());
        }
        RawArtifact {
            source_url: self.source_url.clone(),
            fields,
            fetched_at: fetched_at.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub portal_name: String,
    pub built_at: String,
    /// Sorted by id, ids pairwise distinct.
    pub records: Vec<ArtifactRecord>,
}

impl Catalog {
    pub fn empty(portal_name: &str, built_at: &str) -> Self {
        Catalog {
            portal_name: portal_name.into(),
            built_at: built_at.into(),
            records: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&ArtifactRecord> {
        self.records
            .binary_search_by(|r| r.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.records[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("record from `{source_url}` has neither a title nor an accession number")]
    Unidentifiable { source_url: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    Unidentifiable,
    Duplicate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reject {
    pub source_url: String,
    /// Present for duplicates; unidentifiable raws have no id.
    pub id: Option<String>,
    pub reason: RejectReason,
}

/// Collapses every run of whitespace to one space and trims both ends.
pub fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for word in s.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Upper-cases the first letter of each space-separated word and lower-cases the rest.
pub fn title_case(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut at_word_start = true;
    for c in s.chars() {
        if c == ' ' {
            at_word_start = true;
            out.push(c);
        } else if at_word_start {
            out.extend(c.to_uppercase());
            at_word_start = false;
        } else {
            out.extend(c.to_lowercase());
        }
    }
    out
}

/// Lowercase hex SHA-256 of `s`.
pub fn sha256_hex(s: &str) -> String {
    let digest = Sha256::digest(s.as_bytes());
    let mut out = String::with_capacity(64);
    for b in digest.iter() {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// First 16 lowercase hex digits of SHA-256(url).
pub fn url_id(url: &str) -> String {
    let mut h = sha256_hex(url);
    h.truncate(16);
    h
}

fn normalize_dim(value: &str) -> String {
    let cleaned = collapse_whitespace(value);
    if cleaned.is_empty() {
        UNKNOWN.into()
    } else {
        title_case(&cleaned)
    }
}

pub fn normalize(raw: &RawArtifact) -> Result<ArtifactRecord, NormalizeError> {
    let title = collapse_whitespace(raw.field(FIELD_TITLE));
    let accession = collapse_whitespace(raw.field(FIELD_ACCESSION_NO));
    if title.is_empty() && accession.is_empty() {
        return Err(NormalizeError::Unidentifiable {
            source_url: raw.source_url.clone(),
        });
    }

    let id = if accession.is_empty() {
        url_id(&raw.source_url)
    } else {
        accession.clone()
    };

    let mut dims = DimValues::unknown();
    for d in Dimension::ALL {
        *dims.get_mut(d) = normalize_dim(raw.field(d.name()));
    }

    let mut extras = BTreeMap::new();
    for (k, v) in &raw.fields {
        if k == FIELD_TITLE || Dimension::parse(k).is_some() {
            continue;
        }
        let v = collapse_whitespace(v);
        if !v.is_empty() {
            extras.insert(k.clone(), v);
        }
    }

    Ok(ArtifactRecord {
        id,
        title: if title.is_empty() { accession } else { title },
        source_url: raw.source_url.clone(),
        dims,
        extras,
    })
}

/// Normalizes and deduplicates raws into a catalog sorted by id.
///
/// Raws are processed in input order, so the first occurrence of an id wins.
pub fn build_catalog(
    raws: &[RawArtifact],
    portal_name: &str,
    built_at: &str,
) -> (Catalog, Vec<Reject>) {
    let mut by_id: BTreeMap<String, ArtifactRecord> = BTreeMap::new();
    let mut rejects = Vec::new();
    for raw in raws {
        match normalize(raw) {
            Ok(rec) => {
                if by_id.contains_key(&rec.id) {
                    rejects.push(Reject {
                        source_url: rec.source_url,
                        id: Some(rec.id),
                        reason: RejectReason::Duplicate,
                    });
                } else {
                    by_id.insert(rec.id.clone(), rec);
                }
            }
            Err(NormalizeError::Unidentifiable { source_url }) => rejects.push(Reject {
                source_url,
                id: None,
                reason: RejectReason::Unidentifiable,
            }),
        }
    }
    let catalog = Catalog {
        portal_name: portal_name.into(),
        built_at: built_at.into(),
        records: by_id.into_values().collect(),
    };
    (catalog, rejects)
}

/// Buckets record ids by their value in `d`. Ids inside a bucket are sorted.
pub fn dimension_index(cat: &Catalog, d: Dimension) -> BTreeMap<String, Vec<String>> {
    let mut index: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for rec in &cat.records {
        index
            .entry(rec.dim(d).into())
            .or_default()
            .push(rec.id.clone());
    }
    for ids in index.values_mut() {
        ids.sort();
    }
    index
}

/// Value → count for one dimension.
pub fn value_counts<'a, I>(records: I, d: Dimension) -> BTreeMap<String, usize>
where
    I: IntoIterator<Item = &'a ArtifactRecord>,
{
    let mut counts = BTreeMap::new();
    for rec in records {
        *counts.entry(rec.dim(d).into()).or_insert(0) += 1;
    }
    counts
}

/// Ids that occur more than once, in sorted order.
pub fn duplicate_ids(records: &[ArtifactRecord]) -> BTreeSet<&str> {
    let mut seen = BTreeSet::new();
    let mut dups = BTreeSet::new();
    for r in records {
        if !seen.insert(r.id.as_str()) {
            dups.insert(r.id.as_str());
        }
    }
    dups
}
