//! Deciding whether a finite set tiles the integers.
//!
//! Scan a tiling of `Z` from left to right. At every position the least
//! uncovered integer must be the minimum of the translate covering it, so
//! the placement is forced, and the only state is which of the next
//! `diam(A)` positions are already covered. Tilings are therefore exactly
//! the bi-infinite walks in a functional graph on `2^diam(A)` states, which
//! exist iff the graph has a cycle. A cycle of length `N` is a tiling of
//! period `N`, hence `N ≤ 2^diam(A)`.

use std::collections::{BTreeSet, HashMap};

use super::{TileCertificate, TileVerdict, TilingError};
use crate::Limits;

/// Normalised set: sorted, shifted so the minimum is 0.
fn normalise(set: &[i64]) -> Result<Vec<u64>, TilingError> {
    let set: BTreeSet<i64> = set.iter().copied().collect();
    if set.len() < 2 {
        return Err(TilingError::TooSmall(set.len()));
    }
    let min = *set.first().unwrap();
    Ok(set.into_iter().map(|a| (a - min) as u64).collect())
}

struct Automaton {
    mask: u128,
}

impl Automaton {
    /// Successor of a window state, `None` when the forced placement clashes.
    fn step(&self, s: u128) -> Option<(u128, bool)> {
        if s & 1 == 1 {
            Some((s >> 1, false))
        } else if s & self.mask == 0 {
            Some(((s | self.mask) >> 1, true))
        } else {
            None
        }
    }

    /// Walks once round the cycle through `start`, returning the period and
    /// the offsets (within one period) where a translate is placed.
    fn unroll(&self, start: u128) -> (u64, Vec<i64>) {
        let mut s = start;
        let mut placed = Vec::new();
        let mut pos = 0i64;
        loop {
            let (next, place) = self.step(s).expect("cycle states have successors");
            if place {
                placed.push(pos);
            }
            pos += 1;
            s = next;
            if s == start {
                return (pos as u64, placed);
            }
        }
    }
}

/// Decides whether `set` tiles `Z`, returning a periodic certificate
/// `A ⊕ D = Z_N` (with `A` shifted to start at 0) or `NotTile`.
///
/// All `2^diam` states are explored when that fits under
/// `limits.period_cap`; otherwise only the orbit of the empty window is
/// followed for `period_cap` steps, and failing to close a cycle there is an
/// [`TilingError::UndecidedAtCap`].
pub fn decide_z_tile(set: &[i64], limits: &Limits) -> Result<TileVerdict, TilingError> {
    let a = normalise(set)?;
    let diam = *a.last().unwrap();
    if diam >= 127 {
        return Err(TilingError::UndecidedAtCap { diameter: diam, cap: limits.period_cap });
    }
    let auto = Automaton { mask: a.iter().fold(0u128, |m, &x| m | 1u128 << x) };
    let verdict = |period, complement| TileVerdict::IsTile {
        certificate: TileCertificate::Periodic { period, complement },
    };

    let states = 1u128 << diam;
    if states > limits.period_cap as u128 {
        // Partial exploration from the empty window.
        let mut seen: HashMap<u128, u64> = HashMap::new();
        let mut s = 0u128;
        for step in 0..=limits.period_cap {
            if seen.contains_key(&s) {
                let (period, complement) = auto.unroll(s);
                return Ok(verdict(period, complement));
            }
            seen.insert(s, step);
            match auto.step(s) {
                Some((next, _)) => s = next,
                None => break,
            }
        }
        return Err(TilingError::UndecidedAtCap { diameter: diam, cap: limits.period_cap });
    }

    // 0 = unvisited, 1 = on the current walk, 2 = finished.
    let mut colour = vec![0u8; states as usize];
    let mut path = Vec::new();
    for start in 0..states {
        if colour[start as usize] != 0 {
            continue;
        }
        path.clear();
        let mut s = start;
        loop {
            match colour[s as usize] {
                1 => {
                    let (period, complement) = auto.unroll(s);
                    return Ok(verdict(period, complement));
                }
                2 => break,
                _ => {}
            }
            colour[s as usize] = 1;
            path.push(s);
            match auto.step(s) {
                Some((next, _)) => s = next,
                None => break,
            }
        }
        for &p in &path {
            colour[p as usize] = 2;
        }
    }
    Ok(TileVerdict::NotTile { radius: 0 })
}

/// Checks `A ⊕ D = Z_N`: every residue is hit exactly once by `a + d`.
pub fn verify_periodic(set: &[i64], period: u64, complement: &[i64]) -> bool {
    if period == 0 {
        return false;
    }
    let n = period as i64;
    let mut hit = vec![false; period as usize];
    for &a in set {
        for &d in complement {
            let r = (a + d).rem_euclid(n) as usize;
            if hit[r] {
                return false;
            }
            hit[r] = true;
        }
    }
    hit.into_iter().all(|h| h)
}
