#![allow(dead_code)]

use museumviz_core::{build_catalog, Catalog, Dimension, RawArtifact};
use proptest::prelude::*;

pub const PLACES: &[&str] = &["goa velha", "Old Goa", "Chandor", ""];
pub const TYPES: &[&str] = &["sculpture", "coin", "inscription", "hero stone", ""];
pub const DYNASTIES: &[&str] = &["kadamba", "Portuguese", "Bhoja", ""];
pub const MATERIALS: &[&str] = &["copper", "stone", "basalt", "wood", "gold", ""];

pub fn raw(id: &str, dims: [&str; 4]) -> RawArtifact {
    let mut fields = std::collections::BTreeMap::new();
    fields.insert("title".to_string(), format!("Object {id}"));
    fields.insert("accession_no".to_string(), id.to_string());
    for (d, v) in Dimension::ALL.iter().zip(dims) {
        fields.insert(d.name().to_string(), v.to_string());
    }
    RawArtifact {
        source_url: format!("https://museum.test/object/{id}"),
        fields,
        fetched_at: "2024-01-01T00:00:00Z".into(),
    }
}

fn pick(pool: &'static [&'static str]) -> impl Strategy<Value = &'static str> {
    prop::sample::select(pool)
}

pub fn raws(max: usize) -> impl Strategy<Value = Vec<RawArtifact>> {
    prop::collection::vec(
        (pick(PLACES), pick(TYPES), pick(DYNASTIES), pick(MATERIALS)),
        0..=max,
    )
    .prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (p, t, d, m))| raw(&format!("A{i:03}"), [p, t, d, m]))
            .collect()
    })
}

pub fn catalog(max: usize) -> impl Strategy<Value = Catalog> {
    raws(max).prop_map(|r| build_catalog(&r, "Test Museum", "2024-01-01T00:00:00Z").0)
}

/// Non-empty subset of the four dimensions.
pub fn dims() -> impl Strategy<Value = Vec<Dimension>> {
    prop::sample::subsequence(Dimension::ALL.to_vec(), 1..=4)
}

/// Non-empty ordering of distinct dimensions.
pub fn order() -> impl Strategy<Value = Vec<Dimension>> {
    dims().prop_shuffle()
}
