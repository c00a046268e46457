//! Structural checks for the JSON payloads served to the explorer.

use museumviz_core::Dimension;
use serde_json::Value;

pub fn finite(v: &Value) -> bool {
    v.as_f64().is_some_and(f64::is_finite)
}

pub fn check_network(v: &Value) {
    let nodes = v["nodes"].as_array().unwrap();
    let (w, h) = (
        v["params"]["width"].as_f64().unwrap(),
        v["params"]["height"].as_f64().unwrap(),
    );
    let ids: std::collections::HashSet<&str> =
        nodes.iter().map(|n| n["id"].as_str().unwrap()).collect();
    assert_eq!(ids.len(), nodes.len());
    for n in nodes {
        assert!(["artifact", "dimension_value"].contains(&n["kind"].as_str().unwrap()));
        assert!(n["weight"].as_u64().unwrap() >= 1);
        let (x, y) = (n["x"].as_f64().unwrap(), n["y"].as_f64().unwrap());
        assert!((0.0..=w).contains(&x) && (0.0..=h).contains(&y));
    }
    for e in v["edges"].as_array().unwrap() {
        assert!(ids.contains(e["src"].as_str().unwrap()));
        assert!(ids.contains(e["dst"].as_str().unwrap()));
        assert!(Dimension::parse(e["edge_type"].as_str().unwrap()).is_some());
    }
    for k in ["iterations", "seed"] {
        assert!(v["params"][k].is_u64());
    }
    assert_eq!(v["params"]["prng"], "splitmix64");
}

pub fn check_treemap(v: &Value) {
    assert!(finite(&v["frame"]["w"]) && finite(&v["frame"]["h"]));
    for r in v["rects"].as_array().unwrap() {
        assert!(r["path"].is_array());
        for k in ["x", "y", "w", "h"] {
            assert!(finite(&r[k]), "{r}");
        }
        assert!(r["w"].as_f64().unwrap() >= 0.0 && r["h"].as_f64().unwrap() >= 0.0);
        assert!(r["depth"].is_u64() && r["count"].is_u64());
    }
}

pub fn check_sunburst(v: &Value) {
    for a in v["arcs"].as_array().unwrap() {
        let (s, e) = (a["start"].as_f64().unwrap(), a["end"].as_f64().unwrap());
        assert!(0.0 <= s && s <= e && e <= std::f64::consts::TAU + 1e-9);
        assert!(a["inner_r"].as_f64().unwrap() <= a["outer_r"].as_f64().unwrap());
        assert!(a["path"].is_array() && a["count"].is_u64());
    }
}

pub fn check_polygon(v: &Value) {
    let n = v["axes"].as_array().unwrap().len();
    assert_eq!(v["values"].as_array().unwrap().len(), n);
    assert_eq!(v["raw_counts"].as_array().unwrap().len(), n);
    assert!(Dimension::parse(v["dimension"].as_str().unwrap()).is_some());
    if n > 0 {
        assert!(n >= 3);
        let max = v["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .fold(0.0, f64::max);
        assert_eq!(max, 1.0);
    }
}
