//! Tiles, truncated tilings and the tools that decide, refute or construct
//! them.

mod cover;
mod families;
mod greedy;
mod integers;
mod marks;
mod refute;
mod verify;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::group::{Element, GroupError, GroupSpec};

pub use cover::{CoverOutcome, ExactCover};
pub use families::{named_fixture, random_connected_set, transversal_tile, two_element_tile_test, Fixture};
pub use greedy::greedy_cover;
pub use integers::{decide_z_tile, verify_periodic};
pub use marks::MarkSet;
pub use refute::{bounded_refute, search_cover, CoverSearch};
pub use verify::{verify_partial_tiling, VerifyReport, Violation, ViolationKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("a tile needs at least two distinct elements, got {0}")]
    TooSmall(usize),
    #[error("duplicate element {0} in tile")]
    Duplicate(String),
    #[error("duplicate center {0}")]
    DuplicateCenter(String),
    #[error("core radius {core} exceeds region radius {region}")]
    CoreOutsideRegion { core: u32, region: u32 },
    #[error("undecided: period bound 2^{diameter} exceeds the cap {cap}")]
    UndecidedAtCap { diameter: u64, cap: u64 },
    #[error("{0}")]
    Invalid(String),
}

/// A finite subset of a group with at least two elements, kept in ball order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    spec: GroupSpec,
    elements: Vec<Element>,
}

impl Tile {
    pub fn new(spec: GroupSpec, elements: Vec<Element>) -> Result<Self, TilingError> {
        for e in &elements {
            spec.check(e)?;
        }
        let mut elements = elements;
        elements.sort_by(|a, b| spec.compare(a, b));
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(TilingError::Duplicate(w[0].to_string()));
        }
        if elements.len() < 2 {
            return Err(TilingError::TooSmall(elements.len()));
        }
        Ok(Tile { spec, elements })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.elements.contains(g)
    }

    /// The left shift `g·F`.
    pub fn shift(&self, g: &Element) -> Result<Vec<Element>, GroupError> {
        self.elements.iter().map(|f| self.spec.multiply(g, f)).collect()
    }

    /// `max |f⁻¹f'|` over pairs of tile elements.
    pub fn diameter(&self) -> Result<u64, GroupError> {
        let mut best = 0;
        for f in &self.elements {
            for g in &self.elements {
                best = best.max(self.spec.distance(f, g)?);
            }
        }
        Ok(best)
    }

    pub fn from_json(value: &Value) -> Result<Self, TilingError> {
        let spec: GroupSpec = serde_json::from_value(value.get("group").cloned().unwrap_or(Value::Null))
            .map_err(|e| TilingError::Invalid(format!("tile group: {e}")))?;
        let elements = value
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| TilingError::Invalid("tile needs an \"elements\" array".into()))?
            .iter()
            .map(|v| spec.element_from_json(v))
            .collect::<Result<Vec<_>, _>>()?;
        Tile::new(spec, elements)
    }
}

impl Serialize for Tile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Tile", 2)?;
        st.serialize_field("group", &self.spec)?;
        st.serialize_field("elements", &self.elements)?;
        st.end()
    }
}

/// A finite set of shift centers together with the ball radius on which the
/// shifts are meant to be checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialTiling {
    pub tile: Tile,
    pub centers: Vec<Element>,
    pub region_radius: u32,
}

impl PartialTiling {
    pub fn new(tile: Tile, centers: Vec<Element>, region_radius: u32) -> Result<Self, TilingError> {
        let mut seen = std::collections::HashSet::with_capacity(centers.len());
        for c in &centers {
            tile.spec().check(c)?;
            if !seen.insert(c) {
                return Err(TilingError::DuplicateCenter(c.to_string()));
            }
        }
        Ok(PartialTiling { tile, centers, region_radius })
    }

    /// Reads `{"tile": .., "centers": [..], "region_radius": n}`; other keys
    /// are ignored so richer artifacts carrying these fields are accepted.
    pub fn from_json(value: &Value) -> Result<Self, TilingError> {
        let tile = Tile::from_json(value.get("tile").unwrap_or(&Value::Null))?;
        let centers = value
            .get("centers")
            .and_then(Value::as_array)
            .ok_or_else(|| TilingError::Invalid("partial tiling needs a \"centers\" array".into()))?
            .iter()
            .map(|v| tile.spec().element_from_json(v))
            .collect::<Result<Vec<_>, _>>()?;
        let region_radius = value
            .get("region_radius")
            .and_then(Value::as_u64)
            .ok_or_else(|| TilingError::Invalid("partial tiling needs \"region_radius\"".into()))?;
        PartialTiling::new(tile, centers, region_radius as u32)
    }
}

/// Certificate attached to a positive verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TileCertificate {
    /// `A ⊕ complement = Z_period`, giving the periodic tiling `A ⊕ (complement + period·Z)`.
    Periodic { period: u64, complement: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TileVerdict {
    IsTile { certificate: TileCertificate },
    /// No family of disjoint shifts covers the ball of this radius.
    NotTile { radius: u32 },
    Unknown { radius: u32, budget_exhausted: bool },
}

impl TileVerdict {
    pub fn is_tile(&self) -> bool {
        matches!(self, TileVerdict::IsTile { .. })
    }

    pub fn is_not_tile(&self) -> bool {
        matches!(self, TileVerdict::NotTile { .. })
    }
}
