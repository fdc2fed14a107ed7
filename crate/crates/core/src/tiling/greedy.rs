use super::{MarkSet, PartialTiling, Tile, TilingError};
use crate::group::{ball, BallIndex, Element};
use crate::Limits;

/// First-fit covering of the ball of radius `r`.
///
/// Takes uncovered elements `x` in ball order and places the shift
/// `x·f⁻¹·F` for the first `f ∈ F` (ball order) that keeps every placed
/// shift disjoint; `x` is skipped when no `f` fits. The result may leave
/// holes even for genuine tiles.
pub fn greedy_cover(tile: &Tile, r: u32, limits: &Limits) -> Result<PartialTiling, TilingError> {
    let spec = *tile.spec();
    let diam = tile.diameter()? as u32;
    let index = BallIndex::new(&spec, r.saturating_add(diam), limits.element_cap)?;
    let mut occupied = MarkSet::new(index);
    let inverses: Vec<Element> = tile.elements().iter().map(|f| spec.inverse(f)).collect::<Result<_, _>>()?;
    let mut centers = Vec::new();
    for x in ball(&spec, r, limits.element_cap)? {
        if occupied.contains(&x) {
            continue;
        }
        for fi in &inverses {
            let g = spec.multiply(&x, fi)?;
            let shift = tile.shift(&g)?;
            if shift.iter().all(|e| !occupied.contains(e)) {
                for e in &shift {
                    occupied.insert(e);
                }
                centers.push(g);
                break;
            }
        }
    }
    PartialTiling::new(tile.clone(), centers, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::tiling::verify_partial_tiling;

    fn z_tile(xs: &[i64]) -> Tile {
        Tile::new(GroupSpec::Integers, xs.iter().map(|&x| Element::Integer(x)).collect()).unwrap()
    }

    #[test]
    fn domino_on_z() {
        let pt = greedy_cover(&z_tile(&[0, 1]), 6, &Limits::default()).unwrap();
        let rep = verify_partial_tiling(&pt, 6, &Limits::default()).unwrap();
        assert!(rep.disjoint && rep.covered);
        assert!(pt.centers.iter().all(|c| matches!(c, Element::Integer(x) if x % 2 == 0)));
    }

    #[test]
    fn non_tile_leaves_holes() {
        let pt = greedy_cover(&z_tile(&[0, 1, 3]), 6, &Limits::default()).unwrap();
        let rep = verify_partial_tiling(&pt, 6, &Limits::default()).unwrap();
        assert!(rep.disjoint);
        assert!(!rep.covered);
    }
}
