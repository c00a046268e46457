//! Pagination walk and field extraction.

use std::collections::HashSet;
use std::path::Path;
use std::sync::LazyLock;

use museumviz_core::catalog::collapse_whitespace;
use museumviz_core::RawArtifact;
use scraper::{ElementRef, Html, Selector};
use serde::{Deserialize, Serialize};
use url::Url;

use crate::blueprint::{Blueprint, FieldSelector, MANDATORY_FIELDS};
use crate::source::{FetchError, FixtureSource, HttpSource, PageSource};

static ANCHOR: LazyLock<Selector> = LazyLock::new(|| Selector::parse("a[href]").unwrap());

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub url: String,
    pub cause: String,
}

impl From<FetchError> for Failure {
    fn from(e: FetchError) -> Self {
        Failure {
            url: e.url,
            cause: e.cause,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    /// The item link selector matched nothing on a listing page.
    SelectorMiss,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarvestWarning {
    pub kind: WarningKind,
    pub url: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarvestReport {
    pub portal_name: String,
    pub pages_requested: u64,
    pub pages_fetched: u64,
    pub urls_enumerated: usize,
    pub records_extracted: usize,
    /// Detail pages where none of the five mandatory fields matched.
    pub suspects: Vec<String>,
    pub warnings: Vec<HarvestWarning>,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Harvest {
    pub records: Vec<RawArtifact>,
    pub report: HarvestReport,
}

#[derive(Debug, Clone)]
pub struct HarvestOptions {
    /// Record fetch failures and continue instead of aborting.
    pub keep_going: bool,
    /// Timestamp written into every record's `fetched_at`.
    pub stamp: String,
}

fn resolve(base: Option<&Url>, href: &str) -> String {
    let href = href.trim();
    match base.and_then(|b| b.join(href).ok()) {
        Some(u) => u.to_string(),
        None => href.to_string(),
    }
}

fn link_of(el: ElementRef<'_>, attr: Option<&str>) -> Option<String> {
    match attr {
        Some(a) => el.value().attr(a).map(str::to_string),
        None => el
            .value()
            .attr("href")
            .or_else(|| {
                el.select(&ANCHOR)
                    .next()
                    .and_then(|a| a.value().attr("href"))
            })
            .map(str::to_string),
    }
}

/// Detail links on one listing page, resolved against `page_url`, in document order.
pub fn item_links(html: &str, page_url: &str, selector: &FieldSelector) -> Vec<String> {
    let doc = Html::parse_document(html);
    let base = Url::parse(page_url).ok();
    doc.select(&selector.css)
        .filter_map(|el| link_of(el, selector.attr.as_deref()))
        .filter(|h| !h.trim().is_empty())
        .map(|h| resolve(base.as_ref(), &h))
        .collect()
}

/// Walks every listing page in the blueprint's range and collects detail
/// URLs, de-duplicated in first-seen order. Listing fetch failures abort
/// unless `keep_going` is set, in which case they land in `report.failures`.
pub fn enumerate_item_urls(
    bp: &Blueprint,
    source: &mut dyn PageSource,
    keep_going: bool,
    report: &mut HarvestReport,
) -> Result<Vec<String>, FetchError> {
    let selector = FieldSelector::parse(&bp.item_link_selector);
    let mut seen = HashSet::new();
    let mut urls = Vec::new();
    for page in bp.pages() {
        let page_url = bp.list_url(page);
        report.pages_requested += 1;
        let html = match source.fetch(&page_url) {
            Ok(html) => html,
            Err(e) if keep_going => {
                tracing::warn!(url = %e.url, cause = %e.cause, "listing page skipped");
                report.failures.push(e.into());
                continue;
            }
            Err(e) => return Err(e),
        };
        report.pages_fetched += 1;
        let links = selector
            .as_ref()
            .map(|s| item_links(&html, &page_url, s))
            .unwrap_or_default();
        if links.is_empty() {
            tracing::warn!(url = %page_url, "item link selector matched nothing");
            report.warnings.push(HarvestWarning {
                kind: WarningKind::SelectorMiss,
                url: page_url,
            });
        }
        for link in links {
            if seen.insert(link.clone()) {
                urls.push(link);
            }
        }
    }
    report.urls_enumerated = urls.len();
    Ok(urls)
}

/// Compiled field selectors for one blueprint. A selector that fails to
/// parse matches nothing.
pub struct Extractor {
    fields: Vec<(String, Option<FieldSelector>)>,
}

impl Extractor {
    pub fn new(bp: &Blueprint) -> Self {
        Extractor {
            fields: bp
                .field_selectors
                .iter()
                .map(|(k, v)| (k.clone(), FieldSelector::parse(v)))
                .collect(),
        }
    }

    pub fn extract(&self, html: &str, url: &str, fetched_at: &str) -> RawArtifact {
        let doc = Html::parse_document(html);
        let base = Url::parse(url).ok();
        let fields = self
            .fields
            .iter()
            .map(|(name, sel)| {
                let value = sel
                    .as_ref()
                    .and_then(|s| {
                        let el = doc.select(&s.css).next()?;
                        Some(match s.attr.as_deref() {
                            Some(a @ ("href" | "src")) => el
                                .value()
                                .attr(a)
                                .map(|v| resolve(base.as_ref(), v))
                                .unwrap_or_default(),
                            Some(a) => collapse_whitespace(el.value().attr(a).unwrap_or("")),
                            None => collapse_whitespace(&el.text().collect::<String>()),
                        })
                    })
                    .unwrap_or_default();
                (name.clone(), value)
            })
            .collect();
        RawArtifact {
            source_url: url.into(),
            fields,
            fetched_at: fetched_at.into(),
        }
    }
}

/// First match of each field selector, whitespace-collapsed. Fields whose
/// selector matches nothing are stored as empty strings.
pub fn extract_record(html: &str, url: &str, bp: &Blueprint, fetched_at: &str) -> RawArtifact {
    Extractor::new(bp).extract(html, url, fetched_at)
}

pub fn is_suspect(raw: &RawArtifact) -> bool {
    MANDATORY_FIELDS.iter().all(|f| raw.field(f).is_empty())
}

pub fn harvest(
    bp: &Blueprint,
    source: &mut dyn PageSource,
    opts: &HarvestOptions,
) -> Result<Harvest, FetchError> {
    let mut report = HarvestReport {
        portal_name: bp.portal_name.clone(),
        ..Default::default()
    };
    let urls = enumerate_item_urls(bp, source, opts.keep_going, &mut report)?;
    let extractor = Extractor::new(bp);
    let mut records = Vec::with_capacity(urls.len());
    for url in &urls {
        match source.fetch(url) {
            Ok(html) => {
                let raw = extractor.extract(&html, url, &opts.stamp);
                if is_suspect(&raw) {
                    report.suspects.push(url.clone());
                }
                records.push(raw);
            }
            Err(e) if opts.keep_going => {
                tracing::warn!(url = %e.url, cause = %e.cause, "detail page skipped");
                report.failures.push(e.into());
            }
            Err(e) => return Err(e),
        }
    }
    report.records_extracted = records.len();
    Ok(Harvest { records, report })
}

/// Fixture directory when the blueprint names one, the network otherwise.
pub fn open_source(bp: &Blueprint, user_agent: &str) -> Result<Box<dyn PageSource>, FetchError> {
    Ok(match &bp.fixture_dir {
        Some(dir) => Box::new(FixtureSource::new(dir)),
        None => Box::new(HttpSource::new(
            user_agent,
            std::time::Duration::from_millis(bp.request_delay_ms),
        )?),
    })
}

pub const RAW_ARTIFACTS_FILE: &str = "raw_artifacts.json";
pub const HARVEST_REPORT_FILE: &str = "harvest_report.json";

/// Writes `raw_artifacts.json` and `harvest_report.json` into `dir`.
pub fn write_harvest(dir: &Path, h: &Harvest) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    crate::store::write_json_pretty(&dir.join(RAW_ARTIFACTS_FILE), &h.records)?;
    crate::store::write_json_pretty(&dir.join(HARVEST_REPORT_FILE), &h.report)
}
