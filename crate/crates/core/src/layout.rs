//! Deterministic force-directed layout (Fruchterman-Reingold style).
//!
//! All-pairs repulsion `k²/d`, attraction `d²/k` along edges, per-node
//! displacement capped by a temperature that cools linearly from `W/10`
//! towards zero. Nodes and edges are visited in index order and the only
//! randomness comes from a seeded [`SplitMix64`], so the result is
//! bit-identical for identical inputs.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::graph::NetworkGraph;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutParams {
    pub width: f64,
    pub height: f64,
    pub iterations: u32,
    pub seed: u64,
    pub prng: String,
}

/// Final positions, index-aligned with the graph's nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutPositions {
    pub ids: Vec<String>,
    pub points: Vec<Point>,
    pub params: LayoutParams,
}

impl LayoutPositions {
    pub fn get(&self, id: &str) -> Option<Point> {
        self.ids
            .iter()
            .position(|i| i == id)
            .map(|i| self.points[i])
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LayoutError {
    #[error("layout frame must have positive finite size, got {width} x {height}")]
    DegenerateFrame { width: f64, height: f64 },
    #[error("layout needs at least one iteration")]
    NoIterations,
}

/// Ratio of the coincident-node separation to the ideal edge length `k`.
pub const COINCIDENT_EPSILON: f64 = 1e-6;

pub fn force_layout(
    g: &NetworkGraph,
    width: f64,
    height: f64,
    iterations: u32,
    seed: u64,
) -> Result<LayoutPositions, LayoutError> {
    if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
        return Err(LayoutError::DegenerateFrame { width, height });
    }
    if iterations == 0 {
        return Err(LayoutError::NoIterations);
    }

    let n = g.nodes.len();
    let mut rng = SplitMix64::new(seed);
    let mut pos: Vec<Point> = (0..n)
        .map(|_| {
            let x = rng.next_f64() * width;
            let y = rng.next_f64() * height;
            Point { x, y }
        })
        .collect();

    if n > 0 {
        let k = libm::sqrt(width * height / n as f64);
        let k2 = k * k;
        let eps = COINCIDENT_EPSILON * k;
        let t0 = width / 10.0;
        let mut disp = vec![Point::default(); n];

        for it in 0..iterations {
            let temperature = t0 * f64::from(iterations - it) / f64::from(iterations);
            disp.fill(Point::default());

            for i in 0..n {
                for j in (i + 1)..n {
                    let mut dx = pos[i].x - pos[j].x;
                    let mut dy = pos[i].y - pos[j].y;
                    let mut d = libm::sqrt(dx * dx + dy * dy);
                    if d < eps {
                        let theta = rng.next_f64() * TAU;
                        dx = eps * libm::cos(theta);
                        dy = eps * libm::sin(theta);
                        d = eps;
                    }
                    let s = k2 / (d * d);
                    disp[i].x += dx * s;
                    disp[i].y += dy * s;
                    disp[j].x -= dx * s;
                    disp[j].y -= dy * s;
                }
            }

            for e in &g.edges {
                let dx = pos[e.src].x - pos[e.dst].x;
                let dy = pos[e.src].y - pos[e.dst].y;
                let d = libm::sqrt(dx * dx + dy * dy);
                if d == 0.0 {
                    continue;
                }
                // (d²/k) along the unit vector (dx/d, dy/d)
                let s = d / k;
                disp[e.src].x -= dx * s;
                disp[e.src].y -= dy * s;
                disp[e.dst].x += dx * s;
                disp[e.dst].y += dy * s;
            }

            for (p, dv) in pos.iter_mut().zip(&disp) {
                let len = libm::sqrt(dv.x * dv.x + dv.y * dv.y);
                if len > 0.0 && len.is_finite() {
                    let s = len.min(temperature) / len;
                    p.x += dv.x * s;
                    p.y += dv.y * s;
                }
                p.x = p.x.clamp(0.0, width);
                p.y = p.y.clamp(0.0, height);
            }
        }
    }

    Ok(LayoutPositions {
        ids: g.nodes.iter().map(|n| n.id.clone()).collect(),
        points: pos,
        params: LayoutParams {
            width,
            height,
            iterations,
            seed,
            prng: SplitMix64::NAME.into(),
        },
    })
}

/// Ideal edge length `k = √(W·H/n)` used by [`force_layout`].
pub fn ideal_length(width: f64, height: f64, nodes: usize) -> f64 {
    libm::sqrt(width * height / nodes.max(1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::Dimension;
    use crate::graph::{Edge, GraphMode, Node, NodeKind};
    use alloc::format;

    fn graph(n: usize, edges: &[(usize, usize)]) -> NetworkGraph {
        NetworkGraph {
            mode: GraphMode::Pairwise,
            nodes: (0..n)
                .map(|i| Node {
                    id: format!("n{i}"),
                    kind: NodeKind::Artifact,
                    label: format!("n{i}"),
                    dimension: None,
                    weight: 1,
                })
                .collect(),
            edges: edges
                .iter()
                .map(|&(src, dst)| Edge {
                    src,
                    dst,
                    edge_type: Dimension::Material,
                })
                .collect(),
        }
    }

    #[test]
    fn single_node_stays_at_seeded_point() {
        let g = graph(1, &[]);
        let p = force_layout(&g, 100.0, 50.0, 10, 7).unwrap();
        let mut rng = SplitMix64::new(7);
        let expect = Point {
            x: rng.next_f64() * 100.0,
            y: rng.next_f64() * 50.0,
        };
        assert_eq!(p.points[0], expect);
        assert_eq!(p.get("n0"), Some(expect));
    }

    #[test]
    fn same_seed_same_bits() {
        let g = graph(20, &[(0, 1), (1, 2), (2, 3), (5, 9), (9, 13)]);
        let a = force_layout(&g, 300.0, 200.0, 50, 42).unwrap();
        let b = force_layout(&g, 300.0, 200.0, 50, 42).unwrap();
        for (p, q) in a.points.iter().zip(&b.points) {
            assert_eq!(p.x.to_bits(), q.x.to_bits());
            assert_eq!(p.y.to_bits(), q.y.to_bits());
        }
        let c = force_layout(&g, 300.0, 200.0, 50, 43).unwrap();
        assert_ne!(a.points, c.points);
    }

    #[test]
    fn coincident_nodes_separate_and_stay_finite() {
        // Tiny frame forces heavy clamping into corners, producing exact overlaps.
        let g = graph(30, &[]);
        let p = force_layout(&g, 1e-3, 1e-3, 40, 1).unwrap();
        for q in &p.points {
            assert!(q.x.is_finite() && q.y.is_finite());
            assert!((0.0..=1e-3).contains(&q.x) && (0.0..=1e-3).contains(&q.y));
        }
    }

    #[test]
    fn rejects_bad_frame() {
        let g = graph(2, &[]);
        assert!(matches!(
            force_layout(&g, 0.0, 10.0, 1, 0),
            Err(LayoutError::DegenerateFrame { .. })
        ));
        assert!(matches!(
            force_layout(&g, 10.0, f64::NAN, 1, 0),
            Err(LayoutError::DegenerateFrame { .. })
        ));
        assert_eq!(
            force_layout(&g, 10.0, 10.0, 0, 0),
            Err(LayoutError::NoIterations)
        );
    }

    #[test]
    fn params_echo_prng() {
        let p = force_layout(&graph(0, &[]), 10.0, 10.0, 1, 5).unwrap();
        assert_eq!(p.params.prng, "splitmix64");
        assert_eq!(p.params.seed, 5);
        assert!(p.points.is_empty());
    }
}
