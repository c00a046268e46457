use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

/// Sentinel stored for any dimension the source page did not supply.
pub const UNKNOWN: &str = "Unknown";

/// One of the four categorical facets every artifact is classified by.
///
/// The derived ordering (origin place, object type, dynasty, material) is the
/// canonical order used wherever dimensions are iterated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    OriginPlace,
    ObjectType,
    Dynasty,
    Material,
}

impl Dimension {
    pub const ALL: [Dimension; 4] = [
        Dimension::OriginPlace,
        Dimension::ObjectType,
        Dimension::Dynasty,
        Dimension::Material,
    ];

    /// Stable serialized name, also used as the blueprint field key.
    pub const fn name(self) -> &'static str {
        match self {
            Dimension::OriginPlace => "origin_place",
            Dimension::ObjectType => "object_type",
            Dimension::Dynasty => "dynasty",
            Dimension::Material => "material",
        }
    }

    pub fn parse(name: &str) -> Option<Dimension> {
        Dimension::ALL.into_iter().find(|d| d.name() == name)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown dimension `{0}` (expected one of origin_place, object_type, dynasty, material)")]
pub struct BadDimension(pub alloc::string::String);

impl FromStr for Dimension {
    type Err = BadDimension;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Dimension::parse(s).ok_or_else(|| BadDimension(s.into()))
    }
}

/// The four dimension values of one artifact. Every dimension is always present.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimValues {
    pub origin_place: alloc::string::String,
    pub object_type: alloc::string::String,
    pub dynasty: alloc::string::String,
    pub material: alloc::string::String,
}

impl DimValues {
    pub fn get(&self, d: Dimension) -> &str {
        match d {
            Dimension::OriginPlace => &self.origin_place,
            Dimension::ObjectType => &self.object_type,
            Dimension::Dynasty => &self.dynasty,
            Dimension::Material => &self.material,
        }
    }

    pub fn get_mut(&mut self, d: Dimension) -> &mut alloc::string::String {
        match d {
            Dimension::OriginPlace => &mut self.origin_place,
            Dimension::ObjectType => &mut self.object_type,
            Dimension::Dynasty => &mut self.dynasty,
            Dimension::Material => &mut self.material,
        }
    }

    pub fn unknown() -> Self {
        DimValues {
            origin_place: UNKNOWN.into(),
            object_type: UNKNOWN.into(),
            dynasty: UNKNOWN.into(),
            material: UNKNOWN.into(),
        }
    }
}
