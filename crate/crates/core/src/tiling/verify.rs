use serde::Serialize;

use super::{MarkSet, PartialTiling, TilingError};
use crate::group::{BallIndex, Element};
use crate::Limits;

/// At most this many offending elements are listed in a report.
const MAX_LISTED: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Overlap,
    Uncovered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub element: Element,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub disjoint: bool,
    pub covered: bool,
    pub core_radius: u32,
    pub overlaps: usize,
    pub uncovered: usize,
    pub violations: Vec<Violation>,
}

/// Checks that the shifts `g·F` are pairwise disjoint (everywhere, not only
/// inside the region) and that they cover the ball of radius `core_radius`.
///
/// Only the core ball is indexed; shift elements beyond it go to a hash set,
/// so memory follows the core and the number of shifts, not the region.
pub fn verify_partial_tiling(
    pt: &PartialTiling,
    core_radius: u32,
    limits: &Limits,
) -> Result<VerifyReport, TilingError> {
    if core_radius > pt.region_radius {
        return Err(TilingError::CoreOutsideRegion { core: core_radius, region: pt.region_radius });
    }
    let spec = *pt.tile.spec();
    let index = BallIndex::new(&spec, core_radius, limits.element_cap)?;
    let mut marks = MarkSet::new(index);
    let mut violations = Vec::new();
    let mut overlaps = 0;
    for g in &pt.centers {
        for f in pt.tile.elements() {
            let e = spec.multiply(g, f)?;
            if !marks.insert(&e) {
                overlaps += 1;
                if violations.len() < MAX_LISTED {
                    violations.push(Violation { element: e, kind: ViolationKind::Overlap });
                }
            }
        }
    }
    let core_len = marks.ball().len();
    let mut uncovered = 0;
    for i in 0..core_len {
        if !marks.contains_index(i) {
            uncovered += 1;
            if violations.len() < MAX_LISTED {
                violations.push(Violation { element: marks.ball().element_at(i), kind: ViolationKind::Uncovered });
            }
        }
    }
    Ok(VerifyReport {
        disjoint: overlaps == 0,
        covered: uncovered == 0,
        core_radius,
        overlaps,
        uncovered,
        violations,
    })
}
