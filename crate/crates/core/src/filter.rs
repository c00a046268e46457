use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::Catalog;
use crate::dimension::{BadDimension, Dimension};

/// One `dimension = value` constraint. Values compare against normalized strings exactly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Filter {
    pub dimension: Dimension,
    pub value: String,
}

impl Filter {
    pub fn new(dimension: Dimension, value: impl Into<String>) -> Self {
        Filter {
            dimension,
            value: value.into(),
        }
    }

    pub fn parse(dimension: &str, value: &str) -> Result<Self, BadDimension> {
        Ok(Filter::new(dimension.parse()?, value))
    }
}

/// Restricts a catalog to the records matching every filter. Record order is kept.
pub fn apply_filter(cat: &Catalog, filters: &[Filter]) -> Catalog {
    Catalog {
        portal_name: cat.portal_name.clone(),
        built_at: cat.built_at.clone(),
        records: cat
            .records
            .iter()
            .filter(|r| filters.iter().all(|f| r.dim(f.dimension) == f.value))
            .cloned()
            .collect(),
    }
}

/// Name-based variant of [`apply_filter`] for untyped input.
pub fn apply_named_filter(cat: &Catalog, pairs: &[(&str, &str)]) -> Result<Catalog, BadDimension> {
    let filters = pairs
        .iter()
        .map(|(d, v)| Filter::parse(d, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(apply_filter(cat, &filters))
}
