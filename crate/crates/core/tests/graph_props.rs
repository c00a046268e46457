mod common;
mod oracle;

use std::collections::BTreeSet;

use museumviz_core::graph::{build_network, GraphMode, NodeKind};
use museumviz_core::{force_layout, Dimension, UNKNOWN};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pairwise_matches_brute_force(cat in common::catalog(50), dims in common::dims()) {
        let g = build_network(&cat, &dims, GraphMode::Pairwise).unwrap();
        let got: BTreeSet<_> = g.edges.iter().map(|e| (e.src, e.dst, e.edge_type)).collect();
        prop_assert_eq!(got.len(), g.edges.len(), "duplicate edges");
        prop_assert_eq!(got, oracle::pairwise_edges(&cat, &dims));
        prop_assert!(g.nodes.iter().all(|n| n.kind == NodeKind::Artifact));
    }

    #[test]
    fn hub_edge_count_identity_and_bipartite(cat in common::catalog(50), dims in common::dims()) {
        let g = build_network(&cat, &dims, GraphMode::Hub).unwrap();
        let expected: usize = cat
            .records
            .iter()
            .map(|r| dims.iter().filter(|&&d| r.dim(d) != UNKNOWN).count())
            .sum();
        prop_assert_eq!(g.edges.len(), expected);

        for e in &g.edges {
            prop_assert_eq!(g.nodes[e.src].kind, NodeKind::Artifact);
            prop_assert_eq!(g.nodes[e.dst].kind, NodeKind::DimensionValue);
            prop_assert_eq!(g.nodes[e.dst].dimension, Some(e.edge_type));
        }
        let ids: BTreeSet<&str> = g.nodes.iter().map(|n| n.id.as_str()).collect();
        prop_assert_eq!(ids.len(), g.nodes.len());

        for (i, n) in g.nodes.iter().enumerate() {
            if n.kind == NodeKind::DimensionValue {
                let incident = g.edges.iter().filter(|e| e.dst == i).count();
                prop_assert_eq!(n.weight as usize, incident);
                prop_assert!(incident >= 1);
                prop_assert!(n.label != UNKNOWN);
            }
        }
    }

    #[test]
    fn layout_in_bounds_and_finite(cat in common::catalog(25), seed in any::<u64>()) {
        let g = build_network(&cat, &Dimension::ALL, GraphMode::Hub).unwrap();
        let p = force_layout(&g, 400.0, 300.0, 30, seed).unwrap();
        prop_assert_eq!(p.points.len(), g.nodes.len());
        for q in &p.points {
            prop_assert!(q.x.is_finite() && q.y.is_finite());
            prop_assert!((0.0..=400.0).contains(&q.x));
            prop_assert!((0.0..=300.0).contains(&q.y));
        }
    }
}

#[test]
fn two_connected_nodes_settle_near_ideal_length() {
    use museumviz_core::graph::{Edge, NetworkGraph, Node};
    use museumviz_core::layout::ideal_length;

    let (w, h, iters) = (1000.0, 1000.0, 100);
    let k = ideal_length(w, h, 2);

    // Envelope of the scalar simulation over a sweep of starting separations.
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for s in 1..=140 {
        let d = oracle::two_node_separation(k * s as f64 / 100.0, k, w / 10.0, iters);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    assert!(
        lo >= 0.2 * k && hi <= 5.0 * k,
        "oracle envelope [{lo}, {hi}] vs k={k}"
    );

    let node = |id: &str| Node {
        id: id.into(),
        kind: NodeKind::Artifact,
        label: id.into(),
        dimension: None,
        weight: 1,
    };
    let g = NetworkGraph {
        mode: GraphMode::Pairwise,
        nodes: vec![node("a"), node("b")],
        edges: vec![Edge {
            src: 0,
            dst: 1,
            edge_type: Dimension::Material,
        }],
    };
    for seed in 0..20 {
        let p = force_layout(&g, w, h, iters, seed).unwrap();
        let (a, b) = (p.points[0], p.points[1]);
        let d = ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt();
        assert!(d >= 0.2 * k && d <= 5.0 * k, "seed {seed}: d={d}, k={k}");
        // Away from the walls the free simulation and the layout agree closely.
        let inside = [a, b]
            .iter()
            .all(|p| p.x > 0.0 && p.x < w && p.y > 0.0 && p.y < h);
        if inside {
            assert!((d - k).abs() < 0.05 * k, "seed {seed}: d={d}, k={k}");
        }
    }
}
