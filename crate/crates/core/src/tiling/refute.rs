use std::collections::{HashMap, HashSet};

use super::{CoverOutcome, ExactCover, Tile, TileVerdict, TilingError};
use crate::group::{ball, BallIndex, Element};
use crate::Limits;

/// Result of the exact-cover search behind [`bounded_refute`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverSearch {
    /// Centers of pairwise disjoint shifts covering the ball.
    Found(Vec<Element>),
    Exhausted,
    BudgetExceeded,
}

/// Looks for pairwise disjoint shifts `g·F` covering the ball of radius `r`.
/// Shifts may stick out of the ball, but must stay disjoint there as well,
/// exactly as the restriction of a tiling of the whole group would.
pub fn search_cover(tile: &Tile, r: u32, limits: &Limits) -> Result<(CoverSearch, u64), TilingError> {
    let spec = *tile.spec();
    let index = BallIndex::new(&spec, r, limits.element_cap)?;
    let inner = ball(&spec, r, limits.element_cap)?;
    let inverses: Vec<Element> = tile.elements().iter().map(|f| spec.inverse(f)).collect::<Result<_, _>>()?;

    // Every shift meeting the ball, in ball order of the element it first meets.
    let mut centers: Vec<Element> = Vec::new();
    let mut seen = HashSet::new();
    for e in &inner {
        for fi in &inverses {
            let g = spec.multiply(e, fi)?;
            if seen.insert(g.clone()) {
                centers.push(g);
            }
        }
    }

    let mut outside: HashMap<Element, usize> = HashMap::new();
    let mut rows = Vec::with_capacity(centers.len());
    for g in &centers {
        let mut items = Vec::with_capacity(tile.len());
        for e in tile.shift(g)? {
            let item = match index.index_of(&e) {
                Some(i) => i,
                None => {
                    let next = outside.len();
                    inner.len() + *outside.entry(e).or_insert(next)
                }
            };
            items.push(item);
        }
        rows.push(items);
    }

    let mut x = ExactCover::new(inner.len(), outside.len());
    for items in &rows {
        x.add_option(items);
    }
    let (outcome, nodes) = x.solve(limits.node_budget);
    let result = match outcome {
        CoverOutcome::Found(opts) => CoverSearch::Found(opts.into_iter().map(|o| centers[o].clone()).collect()),
        CoverOutcome::Exhausted => CoverSearch::Exhausted,
        CoverOutcome::BudgetExceeded => CoverSearch::BudgetExceeded,
    };
    Ok((result, nodes))
}

/// Sound refutation: `NotTile` only when no disjoint family of shifts covers
/// the ball of radius `r`. Never answers `IsTile`.
pub fn bounded_refute(tile: &Tile, r: u32, limits: &Limits) -> Result<TileVerdict, TilingError> {
    let (search, _) = search_cover(tile, r, limits)?;
    Ok(match search {
        CoverSearch::Exhausted => TileVerdict::NotTile { radius: r },
        CoverSearch::Found(_) => TileVerdict::Unknown { radius: r, budget_exhausted: false },
        CoverSearch::BudgetExceeded => TileVerdict::Unknown { radius: r, budget_exhausted: true },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::tiling::{verify_partial_tiling, PartialTiling};

    fn z_tile(xs: &[i64]) -> Tile {
        Tile::new(GroupSpec::Integers, xs.iter().map(|&x| Element::Integer(x)).collect()).unwrap()
    }

    #[test]
    fn zero_one_three_is_refuted() {
        let v = bounded_refute(&z_tile(&[0, 1, 3]), 4, &Limits::default()).unwrap();
        assert_eq!(v, TileVerdict::NotTile { radius: 4 });
    }

    #[test]
    fn found_covers_verify() {
        let t = z_tile(&[0, 1, 5]);
        let (CoverSearch::Found(centers), _) = search_cover(&t, 6, &Limits::default()).unwrap() else {
            panic!("expected a cover");
        };
        let pt = PartialTiling::new(t, centers, 6).unwrap();
        let rep = verify_partial_tiling(&pt, 6, &Limits::default()).unwrap();
        assert!(rep.disjoint && rep.covered, "{rep:?}");
    }

    #[test]
    fn budget_gives_unknown() {
        let limits = Limits { node_budget: 1, ..Limits::default() };
        let v = bounded_refute(&z_tile(&[0, 1, 3]), 4, &limits).unwrap();
        assert_eq!(v, TileVerdict::Unknown { radius: 4, budget_exhausted: true });
    }
}
