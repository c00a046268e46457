//! Allocation-only core of the museum collection explorer.
//!
//! Everything here is a pure function of its inputs, from catalog
//! normalization through to the geometry of each visualization. IO,
//! harvesting and serving live in the `museumviz` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod catalog;
pub mod dimension;
pub mod filter;
pub mod graph;
pub mod hierarchy;
pub mod layout;
pub mod polygon;
pub mod rng;
pub mod sunburst;
pub mod treemap;

pub use catalog::{
    build_catalog, dimension_index, normalize, ArtifactRecord, Catalog, NormalizeError,
    RawArtifact, Reject, RejectReason,
};
pub use dimension::{BadDimension, DimValues, Dimension, UNKNOWN};
pub use filter::{apply_filter, apply_named_filter, Filter};
pub use graph::{
    build_network, graph_stats, GraphError, GraphMode, GraphStats, NetworkGraph, NodeKind,
};
pub use hierarchy::{build_hierarchy, HierarchyError, HierarchyNode, DEFAULT_ORDER};
pub use layout::{force_layout, LayoutError, LayoutParams, LayoutPositions, Point};
pub use polygon::{polygon_series, PolygonError, PolygonSeries};
pub use sunburst::{sunburst_layout, SunburstArc, SunburstError};
pub use treemap::{treemap_layout, Rect, TreemapError, TreemapRect};
