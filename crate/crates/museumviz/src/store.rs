//! Catalog and raw-artifact files on disk.

use std::path::{Path, PathBuf};

use museumviz_core::{Catalog, Dimension, RawArtifact};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: not valid JSON: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{}: {source}", path.display())]
    Schema {
        path: PathBuf,
        #[source]
        source: SchemaError,
    },
}

/// A catalog document that parses as JSON but breaks the catalog schema.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}`{field}`: {message}", index.map(|i| format!("record {i}: ")).unwrap_or_default())]
pub struct SchemaError {
    /// Offending record, or `None` for top-level fields.
    pub index: Option<usize>,
    pub field: String,
    pub message: String,
}

fn schema(index: Option<usize>, field: &str, message: &str) -> SchemaError {
    SchemaError {
        index,
        field: field.into(),
        message: message.into(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn write_json_pretty<T: Serialize + ?Sized>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(std::io::Error::other)?;
    bytes.push(b'\n');
    std::fs::write(path, bytes)
}

pub fn save_catalog(cat: &Catalog, path: &Path) -> Result<(), StoreError> {
    write_json_pretty(path, cat).map_err(|source| StoreError::Io {
        path: path.into(),
        source,
    })
}

fn read(path: &Path) -> Result<Value, StoreError> {
    let text = std::fs::read_to_string(path).map_err(|source| StoreError::Io {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| StoreError::Json {
        path: path.into(),
        source,
    })
}

pub fn load_catalog(path: &Path) -> Result<Catalog, StoreError> {
    let value = read(path)?;
    catalog_from_value(value).map_err(|source| StoreError::Schema {
        path: path.into(),
        source,
    })
}

fn clean_string(
    v: Option<&Value>,
    index: Option<usize>,
    field: &str,
    non_empty: bool,
) -> Result<(), SchemaError> {
    let s = match v {
        None => return Err(schema(index, field, "missing")),
        Some(Value::String(s)) => s,
        Some(_) => return Err(schema(index, field, "must be a string")),
    };
    if non_empty && s.is_empty() {
        return Err(schema(index, field, "must not be empty"));
    }
    if s.trim() != s {
        return Err(schema(index, field, "has leading or trailing whitespace"));
    }
    Ok(())
}

fn check_record(i: usize, rec: &Value) -> Result<(), SchemaError> {
    let at = Some(i);
    let obj = rec
        .as_object()
        .ok_or_else(|| schema(at, "records", "record must be an object"))?;
    clean_string(obj.get("id"), at, "id", true)?;
    clean_string(obj.get("title"), at, "title", true)?;
    clean_string(obj.get("source_url"), at, "source_url", false)?;
    let dims = match obj.get("dims") {
        Some(Value::Object(m)) => m,
        Some(_) => return Err(schema(at, "dims", "must be an object")),
        None => return Err(schema(at, "dims", "missing")),
    };
    for d in Dimension::ALL {
        clean_string(dims.get(d.name()), at, d.name(), true)?;
    }
    if let Some(k) = dims.keys().find(|k| Dimension::parse(k).is_none()) {
        return Err(schema(at, k, "is not a dimension"));
    }
    match obj.get("extras") {
        None => {}
        Some(Value::Object(m)) => {
            for (k, v) in m {
                clean_string(Some(v), at, k, false)?;
            }
        }
        Some(_) => return Err(schema(at, "extras", "must be an object")),
    }
    Ok(())
}

/// Validates a parsed catalog document field by field before converting it,
/// so errors point at the offending record.
pub fn catalog_from_value(value: Value) -> Result<Catalog, SchemaError> {
    let top: &Map<String, Value> = value
        .as_object()
        .ok_or_else(|| schema(None, "catalog", "document must be an object"))?;
    for field in ["portal_name", "built_at"] {
        if !matches!(top.get(field), Some(Value::String(_))) {
            return Err(schema(None, field, "missing or not a string"));
        }
    }
    let records = top
        .get("records")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(None, "records", "missing or not an array"))?;
    let mut prev: Option<&str> = None;
    for (i, rec) in records.iter().enumerate() {
        check_record(i, rec)?;
        let id = rec["id"].as_str().unwrap_or_default();
        if let Some(p) = prev {
            if p == id {
                return Err(schema(Some(i), "id", "duplicate id"));
            }
            if p > id {
                return Err(schema(Some(i), "id", "records are not sorted by id"));
            }
        }
        prev = Some(id);
    }
    serde_json::from_value(value).map_err(|e| schema(None, "catalog", &e.to_string()))
}

pub fn read_raw_artifacts(path: &Path) -> Result<Vec<RawArtifact>, StoreError> {
    let value = read(path)?;
    serde_json::from_value(value).map_err(|source| StoreError::Json {
        path: path.into(),
        source,
    })
}
