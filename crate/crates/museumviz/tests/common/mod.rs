#![allow(dead_code)]

pub mod schema;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use museumviz::blueprint::{load_blueprint, Blueprint};
use museumviz::harvest::{harvest, Harvest, HarvestOptions};
use museumviz::source::FixtureSource;
use museumviz_core::{build_catalog, Catalog};
use serde::Deserialize;

pub const STAMP: &str = "2024-05-01T00:00:00Z";

#[derive(Debug, Deserialize)]
pub struct GroundTruth {
    pub listing_pages: u64,
    pub detail_urls: Vec<String>,
    pub records: Vec<TruthRecord>,
}

#[derive(Debug, Deserialize)]
pub struct TruthRecord {
    pub url: String,
    pub fields: BTreeMap<String, String>,
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/goa_sample")
}

pub fn blueprint_path() -> PathBuf {
    fixture_dir().join("blueprint.json")
}

pub fn blueprint() -> Blueprint {
    load_blueprint(&blueprint_path()).unwrap()
}

pub fn ground_truth() -> GroundTruth {
    let text = std::fs::read_to_string(fixture_dir().join("ground_truth.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn fixture_harvest() -> Harvest {
    let bp = blueprint();
    let mut src = FixtureSource::new(bp.fixture_dir.clone().unwrap());
    let opts = HarvestOptions {
        keep_going: false,
        stamp: STAMP.into(),
    };
    harvest(&bp, &mut src, &opts).unwrap()
}

pub fn fixture_catalog() -> Catalog {
    let h = fixture_harvest();
    let (cat, rejects) = build_catalog(&h.records, "Archaeological Survey of India, Goa", STAMP);
    assert!(rejects.is_empty(), "{rejects:?}");
    cat
}

/// Copies the fixture portal into a scratch directory so tests can break it.
pub fn scratch_fixture() -> tempfile::TempDir {
    let tmp = tempfile::tempdir().unwrap();
    let src = fixture_dir();
    std::fs::copy(
        src.join("blueprint.json"),
        tmp.path().join("blueprint.json"),
    )
    .unwrap();
    std::fs::create_dir(tmp.path().join("pages")).unwrap();
    for e in std::fs::read_dir(src.join("pages")).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), tmp.path().join("pages").join(e.file_name())).unwrap();
    }
    tmp
}
