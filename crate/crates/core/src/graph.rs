//! Network graph model over a catalog.
//!
//! Two edge semantics are supported. In [`GraphMode::Hub`] every distinct
//! `(dimension, value)` pair becomes its own node and artifacts link to it,
//! which keeps the edge count linear in the catalog size. In
//! [`GraphMode::Pairwise`] artifacts sharing a value are joined directly.
//! The `Unknown` sentinel never produces an edge in either mode.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::dimension::{Dimension, UNKNOWN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphMode {
    #[default]
    Hub,
    Pairwise,
}

impl GraphMode {
    pub fn parse(s: &str) -> Option<GraphMode> {
        match s {
            "hub" => Some(GraphMode::Hub),
            "pairwise" => Some(GraphMode::Pairwise),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Artifact,
    DimensionValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<Dimension>,
    pub weight: u32,
}

/// Edge between two nodes, stored as indices into [`NetworkGraph::nodes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub edge_type: Dimension,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkGraph {
    pub mode: GraphMode,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("at least one dimension is required to build a network")]
    EmptyDims,
}

/// Prefix for value-node ids; accession numbers and url hashes never start with it.
pub const VALUE_NODE_PREFIX: char = '@';

pub fn value_node_id(d: Dimension, value: &str) -> String {
    format!("{VALUE_NODE_PREFIX}{}:{value}", d.name())
}

/// Sorts and de-duplicates a dimension selection into canonical order.
pub fn canonical_dims(dims: &[Dimension]) -> Vec<Dimension> {
    let mut v = dims.to_vec();
    v.sort();
    v.dedup();
    v
}

pub fn build_network(
    cat: &Catalog,
    dims: &[Dimension],
    mode: GraphMode,
) -> Result<NetworkGraph, GraphError> {
    let dims = canonical_dims(dims);
    if dims.is_empty() {
        return Err(GraphError::EmptyDims);
    }

    let mut nodes: Vec<Node> = cat
        .records
        .iter()
        .map(|r| Node {
            id: r.id.clone(),
            kind: NodeKind::Artifact,
            label: r.title.clone(),
            dimension: None,
            weight: 1,
        })
        .collect();
    let mut edges = Vec::new();

    match mode {
        GraphMode::Hub => {
            // (dimension, value) -> incident artifact indices, in record order.
            let mut hubs: BTreeMap<(Dimension, &str), Vec<usize>> = BTreeMap::new();
            for (i, rec) in cat.records.iter().enumerate() {
                for &d in &dims {
                    let v = rec.dim(d);
                    if v != UNKNOWN {
                        hubs.entry((d, v)).or_default().push(i);
                    }
                }
            }
            let mut hub_index = BTreeMap::new();
            for (&(d, v), members) in &hubs {
                hub_index.insert((d, v), nodes.len());
                nodes.push(Node {
                    id: value_node_id(d, v),
                    kind: NodeKind::DimensionValue,
                    label: v.into(),
                    dimension: Some(d),
                    weight: members.len() as u32,
                });
            }
            for (i, rec) in cat.records.iter().enumerate() {
                for &d in &dims {
                    let v = rec.dim(d);
                    if v != UNKNOWN {
                        edges.push(Edge {
                            src: i,
                            dst: hub_index[&(d, v)],
                            edge_type: d,
                        });
                    }
                }
            }
        }
        GraphMode::Pairwise => {
            for &d in &dims {
                let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
                for (i, rec) in cat.records.iter().enumerate() {
                    let v = rec.dim(d);
                    if v != UNKNOWN {
                        groups.entry(v).or_default().push(i);
                    }
                }
                for members in groups.values() {
                    for (k, &a) in members.iter().enumerate() {
                        for &b in &members[k + 1..] {
                            edges.push(Edge {
                                src: a,
                                dst: b,
                                edge_type: d,
                            });
                        }
                    }
                }
            }
            edges.sort_by_key(|e| (e.src, e.dst, e.edge_type));
        }
    }

    Ok(NetworkGraph { mode, nodes, edges })
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub edges_by_type: BTreeMap<Dimension, usize>,
    /// degree -> number of nodes with that degree
    pub degree_histogram: BTreeMap<usize, usize>,
}

pub fn graph_stats(g: &NetworkGraph) -> GraphStats {
    let mut degree = alloc::vec![0usize; g.nodes.len()];
    let mut edges_by_type = BTreeMap::new();
    for e in &g.edges {
        degree[e.src] += 1;
        degree[e.dst] += 1;
        *edges_by_type.entry(e.edge_type).or_insert(0) += 1;
    }
    let mut degree_histogram = BTreeMap::new();
    for d in degree {
        *degree_histogram.entry(d).or_insert(0) += 1;
    }
    GraphStats {
        node_count: g.nodes.len(),
        edge_count: g.edges.len(),
        edges_by_type,
        degree_histogram,
    }
}
