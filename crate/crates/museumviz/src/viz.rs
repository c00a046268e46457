//! Query parsing and JSON payloads for the four visualizations.
//!
//! Payloads are rendered to bytes here so that the HTTP handlers and the
//! static exporter produce identical output for identical requests.

use std::fmt;

use museumviz_core::graph::GraphMode;
use museumviz_core::polygon::PolygonError;
use museumviz_core::{
    apply_filter, build_hierarchy, build_network, force_layout, polygon_series, sunburst_layout,
    treemap_layout, Catalog, Dimension, Filter, LayoutParams, NodeKind, PolygonSeries, SunburstArc,
    TreemapRect, DEFAULT_ORDER,
};
use serde::Serialize;

pub const DEFAULT_WIDTH: f64 = 1000.0;
pub const DEFAULT_HEIGHT: f64 = 700.0;
pub const DEFAULT_ITERATIONS: u32 = 200;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_INNER_RADIUS: f64 = 60.0;
pub const DEFAULT_RING_WIDTH: f64 = 70.0;
pub const DEFAULT_TOP_K: usize = 8;
pub const DEFAULT_POLYGON_DIMENSION: Dimension = Dimension::ObjectType;
/// Upper bound on layout iterations a single request may ask for.
pub const MAX_ITERATIONS: u32 = 5000;

const KEYS: [&str; 11] = [
    "order",
    "dims",
    "mode",
    "top_k",
    "filter",
    "width",
    "height",
    "iterations",
    "seed",
    "r0",
    "ring_width",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VizKind {
    Network,
    Treemap,
    Sunburst,
    Polygon,
}

impl VizKind {
    pub const ALL: [VizKind; 4] = [
        VizKind::Network,
        VizKind::Treemap,
        VizKind::Sunburst,
        VizKind::Polygon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VizKind::Network => "network",
            VizKind::Treemap => "treemap",
            VizKind::Sunburst => "sunburst",
            VizKind::Polygon => "polygon",
        }
    }

    pub fn parse(s: &str) -> Option<VizKind> {
        VizKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for VizKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rejected request. Serialized as the `{error, detail}` body of a 400.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{error}: {detail}")]
pub struct VizError {
    pub error: &'static str,
    pub detail: String,
}

impl VizError {
    fn new(error: &'static str, detail: impl Into<String>) -> Self {
        VizError {
            error,
            detail: detail.into(),
        }
    }
}

/// Fully defaulted request. Parameters that do not apply to `kind` are
/// accepted and ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct VizRequest {
    pub kind: VizKind,
    pub order: Vec<Dimension>,
    pub dims: Vec<Dimension>,
    pub mode: GraphMode,
    pub top_k: usize,
    pub filters: Vec<Filter>,
    pub width: f64,
    pub height: f64,
    pub iterations: u32,
    pub seed: u64,
    pub r0: f64,
    pub ring_width: f64,
}

impl VizRequest {
    pub fn new(kind: VizKind) -> Self {
        VizRequest {
            kind,
            order: DEFAULT_ORDER.to_vec(),
            dims: match kind {
                VizKind::Polygon => vec![DEFAULT_POLYGON_DIMENSION],
                _ => Dimension::ALL.to_vec(),
            },
            mode: GraphMode::Hub,
            top_k: DEFAULT_TOP_K,
            filters: Vec::new(),
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
            iterations: DEFAULT_ITERATIONS,
            seed: DEFAULT_SEED,
            r0: DEFAULT_INNER_RADIUS,
            ring_width: DEFAULT_RING_WIDTH,
        }
    }

    /// Builds a request from decoded query pairs. `filter` may repeat; any
    /// other key may appear at most once.
    pub fn from_query<K: AsRef<str>, V: AsRef<str>>(
        kind: VizKind,
        pairs: &[(K, V)],
    ) -> Result<Self, VizError> {
        let mut req = VizRequest::new(kind);
        let mut seen: Vec<&str> = Vec::new();
        for (k, v) in pairs {
            let (k, v) = (k.as_ref(), v.as_ref());
            if !KEYS.contains(&k) {
                return Err(VizError::new(
                    "unknown_parameter",
                    format!("unknown query parameter `{k}`"),
                ));
            }
            if k != "filter" {
                if seen.contains(&k) {
                    return Err(VizError::new(
                        "duplicate_parameter",
                        format!("`{k}` given more than once"),
                    ));
                }
                seen.push(k);
            }
            match k {
                "order" => req.order = dimension_list(k, v)?,
                "dims" => req.dims = dimension_list(k, v)?,
                "mode" => {
                    req.mode = GraphMode::parse(v)
                        .ok_or_else(|| bad_value(k, v, "expected `hub` or `pairwise`"))?
                }
                "top_k" => req.top_k = number(k, v)?,
                "filter" => req.filters.push(filter(v)?),
                "width" => req.width = positive(k, v)?,
                "height" => req.height = positive(k, v)?,
                "iterations" => {
                    req.iterations = number(k, v)?;
                    if !(1..=MAX_ITERATIONS).contains(&req.iterations) {
                        return Err(bad_value(
                            k,
                            v,
                            &format!("must be between 1 and {MAX_ITERATIONS}"),
                        ));
                    }
                }
                "seed" => req.seed = number(k, v)?,
                "r0" => {
                    req.r0 = number(k, v)?;
                    if !(req.r0.is_finite() && req.r0 >= 0.0) {
                        return Err(bad_value(k, v, "must be a finite number >= 0"));
                    }
                }
                "ring_width" => req.ring_width = positive(k, v)?,
                _ => unreachable!(),
            }
        }
        req.check()?;
        Ok(req)
    }

    fn check(&self) -> Result<(), VizError> {
        match self.kind {
            VizKind::Treemap | VizKind::Sunburst => {
                museumviz_core::hierarchy::validate_order(&self.order)
                    .map_err(|e| VizError::new("bad_value", format!("order: {e}")))?;
            }
            VizKind::Polygon => {
                if self.dims.len() != 1 {
                    return Err(VizError::new(
                        "bad_value",
                        "dims: the polygon chart takes exactly one dimension",
                    ));
                }
                if self.top_k < museumviz_core::polygon::MIN_AXES {
                    return Err(VizError::new(
                        "bad_value",
                        format!("top_k: must be >= 3, got {}", self.top_k),
                    ));
                }
            }
            VizKind::Network => {}
        }
        Ok(())
    }
}

fn bad_value(key: &str, value: &str, why: &str) -> VizError {
    VizError::new("bad_value", format!("{key}=`{value}`: {why}"))
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, VizError> {
    value
        .parse()
        .map_err(|_| bad_value(key, value, "not a valid number"))
}

fn positive(key: &str, value: &str) -> Result<f64, VizError> {
    let x: f64 = number(key, value)?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(bad_value(key, value, "must be a finite number > 0"))
    }
}

fn dimension(name: &str) -> Result<Dimension, VizError> {
    Dimension::parse(name).ok_or_else(|| {
        VizError::new(
            "bad_dimension",
            format!("`{name}` is not a dimension (expected origin_place, object_type, dynasty or material)"),
        )
    })
}

fn dimension_list(key: &str, value: &str) -> Result<Vec<Dimension>, VizError> {
    if value.trim().is_empty() {
        return Err(bad_value(key, value, "needs at least one dimension"));
    }
    value.split(',').map(|s| dimension(s.trim())).collect()
}

fn filter(value: &str) -> Result<Filter, VizError> {
    let (d, v) = value
        .split_once(':')
        .ok_or_else(|| bad_value("filter", value, "expected `dimension:value`"))?;
    Ok(Filter::new(dimension(d.trim())?, v))
}

#[derive(Serialize)]
struct NetworkNodeOut<'a> {
    id: &'a str,
    kind: NodeKind,
    label: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<Dimension>,
    weight: u32,
    x: f64,
    y: f64,
}

#[derive(Serialize)]
struct NetworkEdgeOut<'a> {
    src: &'a str,
    dst: &'a str,
    edge_type: Dimension,
}

#[derive(Serialize)]
struct NetworkOut<'a> {
    mode: GraphMode,
    nodes: Vec<NetworkNodeOut<'a>>,
    edges: Vec<NetworkEdgeOut<'a>>,
    params: &'a LayoutParams,
}

#[derive(Serialize)]
struct Frame {
    w: f64,
    h: f64,
}

#[derive(Serialize)]
struct TreemapOut {
    frame: Frame,
    rects: Vec<TreemapRect>,
}

#[derive(Serialize)]
struct SunburstOut {
    arcs: Vec<SunburstArc>,
}

fn internal(e: impl fmt::Display) -> VizError {
    VizError::new("bad_value", e.to_string())
}

/// Renders the payload for `req` over `cat` as compact JSON.
pub fn render(cat: &Catalog, req: &VizRequest) -> Result<Vec<u8>, VizError> {
    let view;
    let cat = if req.filters.is_empty() {
        cat
    } else {
        view = apply_filter(cat, &req.filters);
        &view
    };
    let bytes = match req.kind {
        VizKind::Network => {
            let g = build_network(cat, &req.dims, req.mode).map_err(internal)?;
            let pos = force_layout(&g, req.width, req.height, req.iterations, req.seed)
                .map_err(internal)?;
            let nodes = g
                .nodes
                .iter()
                .zip(&pos.points)
                .map(|(n, p)| NetworkNodeOut {
                    id: &n.id,
                    kind: n.kind,
                    label: &n.label,
                    dimension: n.dimension,
                    weight: n.weight,
                    x: p.x,
                    y: p.y,
                })
                .collect();
            let edges = g
                .edges
                .iter()
                .map(|e| NetworkEdgeOut {
                    src: &g.nodes[e.src].id,
                    dst: &g.nodes[e.dst].id,
                    edge_type: e.edge_type,
                })
                .collect();
            serde_json::to_vec(&NetworkOut {
                mode: g.mode,
                nodes,
                edges,
                params: &pos.params,
            })
        }
        VizKind::Treemap => {
            let root = build_hierarchy(cat, &req.order).map_err(internal)?;
            let rects = treemap_layout(&root, req.width, req.height).map_err(internal)?;
            serde_json::to_vec(&TreemapOut {
                frame: Frame {
                    w: req.width,
                    h: req.height,
                },
                rects,
            })
        }
        VizKind::Sunburst => {
            let root = build_hierarchy(cat, &req.order).map_err(internal)?;
            let arcs = sunburst_layout(&root, req.r0, req.ring_width).map_err(internal)?;
            serde_json::to_vec(&SunburstOut { arcs })
        }
        VizKind::Polygon => {
            let d = req.dims[0];
            let series = match polygon_series(cat, d, req.top_k) {
                Ok(s) => s,
                // Too few categories (typically an empty or narrow filter):
                // an empty series rather than an error, like the other views.
                Err(PolygonError::InsufficientCategories { .. }) => PolygonSeries {
                    dimension: d,
                    axes: Vec::new(),
                    values: Vec::new(),
                    raw_counts: Vec::new(),
                },
                Err(e) => return Err(internal(e)),
            };
            serde_json::to_vec(&series)
        }
    };
    Ok(bytes.expect("payload types always serialize"))
}
