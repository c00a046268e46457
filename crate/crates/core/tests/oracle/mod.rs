//! Slow reference implementations used to check the production code paths.
//! Nothing in here calls into the layout or graph builders it is checking.
#![allow(dead_code)]

use std::collections::BTreeSet;

use museumviz_core::{Catalog, Dimension, UNKNOWN};

/// All (i, j, dimension) with i < j whose values agree and are known.
pub fn pairwise_edges(cat: &Catalog, dims: &[Dimension]) -> BTreeSet<(usize, usize, Dimension)> {
    let mut out = BTreeSet::new();
    let n = cat.records.len();
    for i in 0..n {
        for j in 0..n {
            if i >= j {
                continue;
            }
            for &d in dims {
                let a = cat.records[i].dims.get(d);
                let b = cat.records[j].dims.get(d);
                if a == b && a != UNKNOWN {
                    out.insert((i, j, d));
                }
            }
        }
    }
    out
}

/// Squarify transcribed step by step: keep a list of laid-out rectangles for
/// the candidate row, measure each one's aspect ratio from its actual
/// width and height, and accept the next child while the worst ratio does
/// not grow.
pub fn squarify(areas: &[f64], x: f64, y: f64, w: f64, h: f64) -> Vec<[f64; 4]> {
    let mut out = Vec::new();
    let mut free = [x, y, w, h];
    let mut rest: Vec<f64> = areas.to_vec();
    let mut row: Vec<f64> = Vec::new();
    while !rest.is_empty() {
        let c = rest[0];
        let mut candidate = row.clone();
        candidate.push(c);
        if row.is_empty() || worst(&candidate, free) <= worst(&row, free) {
            row = candidate;
            rest.remove(0);
        } else {
            free = emit(&row, free, &mut out);
            row.clear();
        }
    }
    if !row.is_empty() {
        emit(&row, free, &mut out);
    }
    out
}

fn layout_row(row: &[f64], free: [f64; 4]) -> (Vec<[f64; 4]>, [f64; 4]) {
    let [x, y, w, h] = free;
    let sum: f64 = row.iter().sum();
    let mut rects = Vec::new();
    if w >= h {
        let t = sum / h;
        let mut cy = y;
        for a in row {
            let ch = a / t;
            rects.push([x, cy, t, ch]);
            cy += ch;
        }
        (rects, [x + t, y, w - t, h])
    } else {
        let t = sum / w;
        let mut cx = x;
        for a in row {
            let cw = a / t;
            rects.push([cx, y, cw, t]);
            cx += cw;
        }
        (rects, [x, y + t, w, h - t])
    }
}

fn worst(row: &[f64], free: [f64; 4]) -> f64 {
    let (rects, _) = layout_row(row, free);
    rects
        .iter()
        .map(|r| (r[2] / r[3]).max(r[3] / r[2]))
        .fold(0.0, f64::max)
}

fn emit(row: &[f64], free: [f64; 4], out: &mut Vec<[f64; 4]>) -> [f64; 4] {
    let (rects, rest) = layout_row(row, free);
    out.extend(rects);
    rest
}

/// Two nodes joined by one edge, simulated as a scalar separation `d` with no
/// frame walls: each endpoint moves by the capped net force along the line.
pub fn two_node_separation(start: f64, k: f64, t0: f64, iterations: u32) -> f64 {
    let mut d = start;
    for it in 0..iterations {
        let t = t0 * f64::from(iterations - it) / f64::from(iterations);
        let net = k * k / d - d * d / k;
        let step = net.abs().min(t) * net.signum();
        d += 2.0 * step;
    }
    d
}
