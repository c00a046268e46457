use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::catalog::{ArtifactRecord, Catalog};
use crate::dimension::Dimension;

/// Classification used when a request does not name one: type first, then
/// material, dynasty and place of origin.
pub const DEFAULT_ORDER: [Dimension; 4] = [
    Dimension::ObjectType,
    Dimension::Material,
    Dimension::Dynasty,
    Dimension::OriginPlace,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyNode {
    pub label: String,
    pub depth: usize,
    pub count: usize,
    pub children: Vec<HierarchyNode>,
    /// Only populated on leaves (depth == order length).
    pub member_ids: Vec<String>,
}

impl HierarchyNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Pre-order walk yielding every node together with its label path from the root.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&[&'a str], &'a HierarchyNode)) {
        fn go<'a>(
            node: &'a HierarchyNode,
            path: &mut Vec<&'a str>,
            f: &mut impl FnMut(&[&'a str], &'a HierarchyNode),
        ) {
            path.push(&node.label);
            f(path, node);
            for c in &node.children {
                go(c, path, f);
            }
            path.pop();
        }
        go(self, &mut Vec::new(), f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HierarchyError {
    #[error("hierarchy order must name at least one dimension")]
    EmptyOrder,
    #[error("dimension `{0}` appears more than once in the hierarchy order")]
    DuplicateDimension(Dimension),
}

/// Sibling order shared by every hierarchical view: count descending, then label.
pub fn sort_children(children: &mut [HierarchyNode]) {
    children.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.label.cmp(&b.label)));
}

pub fn validate_order(order: &[Dimension]) -> Result<(), HierarchyError> {
    if order.is_empty() {
        return Err(HierarchyError::EmptyOrder);
    }
    for (i, d) in order.iter().enumerate() {
        if order[..i].contains(d) {
            return Err(HierarchyError::DuplicateDimension(*d));
        }
    }
    Ok(())
}

pub fn build_hierarchy(
    cat: &Catalog,
    order: &[Dimension],
) -> Result<HierarchyNode, HierarchyError> {
    validate_order(order)?;
    let records: Vec<&ArtifactRecord> = cat.records.iter().collect();
    Ok(group(&cat.portal_name, 0, &records, order))
}

fn group(
    label: &str,
    depth: usize,
    records: &[&ArtifactRecord],
    rest: &[Dimension],
) -> HierarchyNode {
    let Some((&d, rest)) = rest.split_first() else {
        return HierarchyNode {
            label: label.into(),
            depth,
            count: records.len(),
            children: Vec::new(),
            member_ids: records.iter().map(|r| r.id.clone()).collect(),
        };
    };

    let mut buckets: BTreeMap<&str, Vec<&ArtifactRecord>> = BTreeMap::new();
    for r in records {
        buckets.entry(r.dim(d)).or_default().push(r);
    }
    let mut children: Vec<HierarchyNode> = buckets
        .into_iter()
        .map(|(value, members)| group(value, depth + 1, &members, rest))
        .collect();
    sort_children(&mut children);

    HierarchyNode {
        label: label.into(),
        depth,
        count: records.len(),
        children,
        member_ids: Vec::new(),
    }
}
