use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::hierarchy::HierarchyNode;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SunburstArc {
    pub path: Vec<String>,
    /// Radians, `0 <= start <= end <= 2π`.
    pub start: f64,
    pub end: f64,
    pub inner_r: f64,
    pub outer_r: f64,
    pub count: usize,
}

impl SunburstArc {
    pub fn span(&self) -> f64 {
        self.end - self.start
    }

    pub fn depth(&self) -> usize {
        self.path.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SunburstError {
    #[error(
        "sunburst needs inner radius >= 0 and ring width > 0, got {inner_radius} and {ring_width}"
    )]
    DegenerateRadii { inner_radius: f64, ring_width: f64 },
}

/// Radii `[inner, outer]` of the ring at `depth`. Depth 0 is the central disc.
pub fn ring(depth: usize, inner_radius: f64, ring_width: f64) -> (f64, f64) {
    if depth == 0 {
        (0.0, inner_radius)
    } else {
        let d = depth as f64;
        (
            inner_radius + (d - 1.0) * ring_width,
            inner_radius + d * ring_width,
        )
    }
}

/// Radial partition layout. The root covers the full circle as the central
/// disc; every child takes a slice of its parent's span proportional to its
/// count, laid out consecutively in sibling order.
pub fn sunburst_layout(
    root: &HierarchyNode,
    inner_radius: f64,
    ring_width: f64,
) -> Result<Vec<SunburstArc>, SunburstError> {
    if !(inner_radius.is_finite()
        && ring_width.is_finite()
        && inner_radius >= 0.0
        && ring_width > 0.0)
    {
        return Err(SunburstError::DegenerateRadii {
            inner_radius,
            ring_width,
        });
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    place(
        root,
        0.0,
        TAU,
        inner_radius,
        ring_width,
        &mut path,
        &mut out,
    );
    Ok(out)
}

fn place(
    node: &HierarchyNode,
    start: f64,
    end: f64,
    r0: f64,
    ring_width: f64,
    path: &mut Vec<String>,
    out: &mut Vec<SunburstArc>,
) {
    path.push(node.label.clone());
    let (inner_r, outer_r) = ring(node.depth, r0, ring_width);
    out.push(SunburstArc {
        path: path.clone(),
        start,
        end,
        inner_r,
        outer_r,
        count: node.count,
    });

    let total: usize = node.children.iter().map(|c| c.count).sum();
    let span = end - start;
    let mut cum = 0usize;
    for child in &node.children {
        let child_start = if total == 0 {
            start
        } else {
            start + span * (cum as f64 / total as f64)
        };
        cum += child.count;
        let child_end = if total == 0 {
            start
        } else if cum == total {
            end
        } else {
            start + span * (cum as f64 / total as f64)
        };
        place(child, child_start, child_end, r0, ring_width, path, out);
    }
    path.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::PI;

    fn node(
        label: &str,
        depth: usize,
        count: usize,
        children: Vec<HierarchyNode>,
    ) -> HierarchyNode {
        HierarchyNode {
            label: label.into(),
            depth,
            count,
            children,
            member_ids: vec![],
        }
    }

    #[test]
    fn one_child_spans_full_circle() {
        let root = node("r", 0, 1, vec![node("a", 1, 1, vec![])]);
        let arcs = sunburst_layout(&root, 10.0, 5.0).unwrap();
        assert_eq!(arcs[1].start, 0.0);
        assert_eq!(arcs[1].end, TAU);
        assert_eq!((arcs[1].inner_r, arcs[1].outer_r), (10.0, 15.0));
        assert_eq!((arcs[0].inner_r, arcs[0].outer_r), (0.0, 10.0));
    }

    #[test]
    fn spans_follow_sorted_counts() {
        // Sorted order puts the 2-count child first.
        let root = node(
            "r",
            0,
            4,
            vec![
                node("b", 1, 2, vec![]),
                node("a", 1, 1, vec![]),
                node("c", 1, 1, vec![]),
            ],
        );
        let arcs = sunburst_layout(&root, 0.0, 1.0).unwrap();
        let spans: Vec<f64> = arcs[1..].iter().map(SunburstArc::span).collect();
        assert!((spans[0] - PI).abs() < 1e-12);
        assert!((spans[1] - PI / 2.0).abs() < 1e-12);
        assert!((spans[2] - PI / 2.0).abs() < 1e-12);
        assert_eq!(arcs[1].start, 0.0);
        assert_eq!(arcs[2].start, arcs[1].end);
        assert_eq!(arcs[3].end, TAU);
    }

    #[test]
    fn zero_count_children_get_zero_span() {
        let root = node("r", 0, 0, vec![node("a", 1, 0, vec![])]);
        let arcs = sunburst_layout(&root, 1.0, 1.0).unwrap();
        assert_eq!(arcs[1].span(), 0.0);
    }

    #[test]
    fn radii_validation() {
        let root = node("r", 0, 0, vec![]);
        assert!(sunburst_layout(&root, -1.0, 1.0).is_err());
        assert!(sunburst_layout(&root, 0.0, 0.0).is_err());
        assert!(sunburst_layout(&root, 0.0, f64::INFINITY).is_err());
    }
}
