//! Squarified treemap.
//!
//! Children (already in count-descending order) are packed into rows laid
//! along the shorter side of the space still free in the parent. A child
//! joins the current row as long as that does not make the row's worst
//! aspect ratio larger; otherwise the row is frozen and a new one starts in
//! the leftover strip.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use serde::{Deserialize, Serialize};

use crate::hierarchy::HierarchyNode;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub const fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        Rect { x, y, w, h }
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    pub fn contains(&self, other: &Rect, tol: f64) -> bool {
        other.x >= self.x - tol
            && other.y >= self.y - tol
            && other.x + other.w <= self.x + self.w + tol
            && other.y + other.h <= self.y + self.h + tol
    }

    /// Area of the intersection of the two rectangles.
    pub fn overlap(&self, other: &Rect) -> f64 {
        let w = (self.x + self.w).min(other.x + other.w) - self.x.max(other.x);
        let h = (self.y + self.h).min(other.y + other.h) - self.y.max(other.y);
        if w > 0.0 && h > 0.0 {
            w * h
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreemapRect {
    /// Labels from the root (inclusive) down to this node.
    pub path: Vec<String>,
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
    pub depth: usize,
    pub count: usize,
}

impl TreemapRect {
    pub fn rect(&self) -> Rect {
        Rect::new(self.x, self.y, self.w, self.h)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TreemapError {
    #[error("treemap frame must have positive finite size, got {width} x {height}")]
    DegenerateFrame { width: f64, height: f64 },
}

/// One frozen row: which children it holds and the side length it was measured against.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub members: Range<usize>,
    pub side: f64,
}

/// Worst aspect ratio of a row of `areas` laid along a side of length `side`.
pub fn worst_ratio(areas: &[f64], side: f64) -> f64 {
    let sum: f64 = areas.iter().sum();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for &a in areas {
        lo = lo.min(a);
        hi = hi.max(a);
    }
    let s2 = side * side;
    let sum2 = sum * sum;
    (s2 * hi / sum2).max(sum2 / (s2 * lo))
}

/// Splits `frame` among `weights` in proportion, returning one rect per weight
/// plus the rows that were built. Zero weights get zero-size rects.
pub fn squarify(weights: &[f64], frame: Rect) -> (Vec<Rect>, Vec<Row>) {
    let total: f64 = weights.iter().sum();
    let mut rects = alloc::vec![Rect::new(frame.x, frame.y, 0.0, 0.0); weights.len()];
    let mut rows = Vec::new();
    if total <= 0.0 {
        return (rects, rows);
    }

    let scale = frame.area() / total;
    let areas: Vec<f64> = weights.iter().map(|w| w * scale).collect();
    let positive: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > 0.0).collect();

    let mut free = frame;
    let mut start = 0;
    while start < positive.len() {
        let side = free.w.min(free.h);
        let mut end = start + 1;
        let mut row_areas: Vec<f64> = alloc::vec![areas[positive[start]]];
        if side > 0.0 {
            let mut current = worst_ratio(&row_areas, side);
            while end < positive.len() {
                row_areas.push(areas[positive[end]]);
                let next = worst_ratio(&row_areas, side);
                if next <= current {
                    current = next;
                    end += 1;
                } else {
                    row_areas.pop();
                    break;
                }
            }
        } else {
            end = positive.len();
            row_areas = positive[start..].iter().map(|&i| areas[i]).collect();
        }

        let last_row = end == positive.len();
        let row_sum: f64 = row_areas.iter().sum();
        let mut cum = 0.0;
        let members = &positive[start..end];
        if free.w >= free.h {
            // Column along the left edge, children stacked top to bottom.
            let thickness = if last_row { free.w } else { row_sum / free.h };
            for (k, &idx) in members.iter().enumerate() {
                let y0 = free.y + free.h * (cum / row_sum);
                cum += areas[idx];
                let y1 = if k + 1 == members.len() {
                    free.y + free.h
                } else {
                    free.y + free.h * (cum / row_sum)
                };
                rects[idx] = Rect::new(free.x, y0, thickness, y1 - y0);
            }
            free.x += thickness;
            free.w = if last_row { 0.0 } else { free.w - thickness };
        } else {
            // Strip along the top edge, children left to right.
            let thickness = if last_row { free.h } else { row_sum / free.w };
            for (k, &idx) in members.iter().enumerate() {
                let x0 = free.x + free.w * (cum / row_sum);
                cum += areas[idx];
                let x1 = if k + 1 == members.len() {
                    free.x + free.w
                } else {
                    free.x + free.w * (cum / row_sum)
                };
                rects[idx] = Rect::new(x0, free.y, x1 - x0, thickness);
            }
            free.y += thickness;
            free.h = if last_row { 0.0 } else { free.h - thickness };
        }
        rows.push(Row {
            members: start..end,
            side,
        });
        start = end;
    }

    for (i, w) in weights.iter().enumerate() {
        if *w <= 0.0 {
            rects[i] = Rect::new(free.x, free.y, 0.0, 0.0);
        }
    }
    (rects, rows)
}

/// Lays out the whole hierarchy inside a `width` x `height` frame anchored at
/// the origin. The root's rect is emitted first, followed by every descendant
/// in pre-order.
pub fn treemap_layout(
    root: &HierarchyNode,
    width: f64,
    height: f64,
) -> Result<Vec<TreemapRect>, TreemapError> {
    if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
        return Err(TreemapError::DegenerateFrame { width, height });
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    place(
        root,
        Rect::new(0.0, 0.0, width, height),
        &mut path,
        &mut out,
    );
    Ok(out)
}

fn place(node: &HierarchyNode, rect: Rect, path: &mut Vec<String>, out: &mut Vec<TreemapRect>) {
    path.push(node.label.clone());
    out.push(TreemapRect {
        path: path.clone(),
        x: rect.x,
        y: rect.y,
        w: rect.w,
        h: rect.h,
        depth: node.depth,
        count: node.count,
    });
    if !node.children.is_empty() {
        let weights: Vec<f64> = node.children.iter().map(|c| c.count as f64).collect();
        let (rects, _) = squarify(&weights, rect);
        for (child, r) in node.children.iter().zip(rects) {
            place(child, r, path, out);
        }
    }
    path.pop();
}
