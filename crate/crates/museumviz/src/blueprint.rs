//! Portal blueprints: where the listing pages live and which selectors pull
//! each metadata field out of a detail page.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use scraper::Selector;
use serde::{Deserialize, Serialize};

/// Every blueprint must say how to find these.
pub const MANDATORY_FIELDS: [&str; 5] = [
    "title",
    "origin_place",
    "object_type",
    "dynasty",
    "material",
];
/// Optional fields with a known meaning. Other keys are allowed and end up in
/// the record's extras.
pub const OPTIONAL_FIELDS: [&str; 3] = ["image_url", "description", "accession_no"];

pub const PAGE_PLACEHOLDER: &str = "{page}";
pub const MAX_PAGES: u64 = 10_000;
pub const DEFAULT_DELAY_MS: u64 = 500;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Blueprint {
    pub portal_name: String,
    pub list_url_template: String,
    pub page_start: u64,
    pub page_end: u64,
    pub item_link_selector: String,
    pub field_selectors: BTreeMap<String, String>,
    #[serde(default = "default_delay")]
    pub request_delay_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture_dir: Option<PathBuf>,
}

fn default_delay() -> u64 {
    DEFAULT_DELAY_MS
}

#[derive(Debug, thiserror::Error)]
pub enum BlueprintError {
    #[error("cannot read blueprint {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("blueprint is not valid JSON: {0}")]
    ParseError(#[from] serde_json::Error),
    #[error("blueprint is missing the `{0}` field selector")]
    MissingField(String),
    #[error("list_url_template must contain `{{page}}` exactly once, found {count}")]
    MalformedTemplate { count: usize },
    #[error(
        "page range {start}..={end} is invalid (end must be >= start and span at most 10000 pages)"
    )]
    InvalidPageRange { start: u64, end: u64 },
    #[error("selector for `{field}` does not parse: `{selector}`")]
    InvalidSelector { field: String, selector: String },
}

impl Blueprint {
    pub fn validate(&self) -> Result<(), BlueprintError> {
        for f in MANDATORY_FIELDS {
            if !self.field_selectors.contains_key(f) {
                return Err(BlueprintError::MissingField(f.into()));
            }
        }
        let count = self.list_url_template.matches(PAGE_PLACEHOLDER).count();
        if count != 1 {
            return Err(BlueprintError::MalformedTemplate { count });
        }
        if self.page_end < self.page_start || self.page_end - self.page_start + 1 > MAX_PAGES {
            return Err(BlueprintError::InvalidPageRange {
                start: self.page_start,
                end: self.page_end,
            });
        }
        FieldSelector::parse(&self.item_link_selector).ok_or_else(|| {
            BlueprintError::InvalidSelector {
                field: "item_link_selector".into(),
                selector: self.item_link_selector.clone(),
            }
        })?;
        for (field, sel) in &self.field_selectors {
            FieldSelector::parse(sel).ok_or_else(|| BlueprintError::InvalidSelector {
                field: field.clone(),
                selector: sel.clone(),
            })?;
        }
        Ok(())
    }

    pub fn list_url(&self, page: u64) -> String {
        self.list_url_template
            .replace(PAGE_PLACEHOLDER, &page.to_string())
    }

    pub fn pages(&self) -> std::ops::RangeInclusive<u64> {
        self.page_start..=self.page_end
    }
}

/// Parses and validates a blueprint document. A relative `fixture_dir` is
/// left as written.
pub fn parse_blueprint(json: &str) -> Result<Blueprint, BlueprintError> {
    let bp: Blueprint = serde_json::from_str(json)?;
    bp.validate()?;
    Ok(bp)
}

/// Reads a blueprint file. A relative `fixture_dir` is resolved against the
/// directory holding the blueprint.
pub fn load_blueprint(path: &Path) -> Result<Blueprint, BlueprintError> {
    let text = std::fs::read_to_string(path).map_err(|source| BlueprintError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut bp = parse_blueprint(&text)?;
    if let Some(dir) = &bp.fixture_dir {
        if dir.is_relative() {
            let base = path.parent().unwrap_or_else(|| Path::new(""));
            bp.fixture_dir = Some(base.join(dir));
        }
    }
    Ok(bp)
}

/// A CSS selector, optionally suffixed with `@attr` to read an attribute
/// instead of the text content (`img.photo @src`).
#[derive(Debug, Clone)]
pub struct FieldSelector {
    pub css: Selector,
    pub attr: Option<String>,
}

impl FieldSelector {
    pub fn parse(s: &str) -> Option<Self> {
        let (css, attr) = match s.rsplit_once('@') {
            Some((css, attr))
                if !attr.trim().is_empty()
                    && attr
                        .trim()
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == ':') =>
            {
                (css.trim(), Some(attr.trim().to_string()))
            }
            _ => (s.trim(), None),
        };
        let css = Selector::parse(css).ok()?;
        Some(FieldSelector { css, attr })
    }
}
