//! Radar-style frequency series for one dimension.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::catalog::{value_counts, Catalog};
use crate::dimension::{Dimension, UNKNOWN};

pub const MIN_AXES: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonSeries {
    pub dimension: Dimension,
    pub axes: Vec<String>,
    /// raw_counts[i] / max(raw_counts)
    pub values: Vec<f64>,
    pub raw_counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error("polygon chart needs top_k >= 3, got {0}")]
    TopKTooSmall(usize),
    #[error("`{dimension}` has only {available} distinct value(s); a polygon needs at least 3")]
    InsufficientCategories {
        dimension: Dimension,
        available: usize,
    },
}

/// The `top_k` most frequent values of `d` (count desc, label asc).
/// `Unknown` is only ranked when fewer than three known values exist.
pub fn polygon_series(
    cat: &Catalog,
    d: Dimension,
    top_k: usize,
) -> Result<PolygonSeries, PolygonError> {
    if top_k < MIN_AXES {
        return Err(PolygonError::TopKTooSmall(top_k));
    }
    let counts = value_counts(&cat.records, d);
    let known = counts.keys().filter(|k| k.as_str() != UNKNOWN).count();
    let mut ranked: Vec<(&String, usize)> = counts
        .iter()
        .filter(|(k, _)| known < MIN_AXES || k.as_str() != UNKNOWN)
        .map(|(k, &c)| (k, c))
        .collect();
    if ranked.len() < MIN_AXES {
        return Err(PolygonError::InsufficientCategories {
            dimension: d,
            available: ranked.len(),
        });
    }
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    ranked.truncate(top_k);

    let max = ranked[0].1 as f64;
    Ok(PolygonSeries {
        dimension: d,
        axes: ranked.iter().map(|(k, _)| (*k).clone()).collect(),
        values: ranked.iter().map(|&(_, c)| c as f64 / max).collect(),
        raw_counts: ranked.iter().map(|&(_, c)| c).collect(),
    })
}
