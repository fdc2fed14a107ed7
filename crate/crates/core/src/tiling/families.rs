//! Families of sets whose tiling status is known: two-element sets, coset
//! transversals of sublattices, balls, spheres, boxes and connected sets.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Tile, TilingError};
use crate::group::{ball, Element, GroupSpec, Word};
use crate::Limits;

/// `{ε, g}` tiles the group iff `g` has infinite or even order.
pub fn two_element_tile_test(spec: &GroupSpec, g: &Element) -> Result<bool, TilingError> {
    if *g == spec.identity() {
        spec.check(g)?;
        return Err(TilingError::Invalid("two-element test needs a non-identity element".into()));
    }
    Ok(match spec.order(g)? {
        None => true,
        Some(n) => n % 2 == 0,
    })
}

/// Lower-triangular column Hermite form of the lattice spanned by the
/// columns of `m`; the diagonal is positive.
fn column_hnf(m: &[Vec<i64>]) -> Result<Vec<Vec<i128>>, TilingError> {
    let d = m.len();
    if d == 0 || m.iter().any(|row| row.len() != d) {
        return Err(TilingError::Invalid("matrix must be square and non-empty".into()));
    }
    let mut h: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let col_op = |h: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
        for row in h.iter_mut() {
            row[dst] -= q * row[src];
        }
    };
    let swap = |h: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for row in h.iter_mut() {
            row.swap(a, b);
        }
    };
    for i in 0..d {
        // Euclid on row i across columns i.., until only column i is non-zero.
        loop {
            let pivot = (i..d).filter(|&j| h[i][j] != 0).min_by_key(|&j| h[i][j].abs());
            let Some(p) = pivot else {
                return Err(TilingError::Invalid("matrix is singular".into()));
            };
            swap(&mut h, i, p);
            let mut done = true;
            for j in i + 1..d {
                if h[i][j] != 0 {
                    let q = h[i][j].div_euclid(h[i][i]);
                    col_op(&mut h, j, i, q);
                    done &= h[i][j] == 0;
                }
            }
            if done {
                break;
            }
        }
        if h[i][i] < 0 {
            for row in h.iter_mut() {
                row[i] = -row[i];
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
/// Reduces `v` into the fundamental box `0 ≤ v_i < h_ii`.
fn reduce_mod(h: &[Vec<i128>], v: &[i64]) -> Vec<i64> {
    let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for i in 0..h.len() {
        let q = v[i].div_euclid(h[i][i]);
        if q != 0 {
            for (k, x) in v.iter_mut().enumerate() {
                *x -= q * h[k][i];
            }
        }
    }
    v.into_iter().map(|x| x as i64).collect()
}

/// One representative of each coset of the lattice spanned by the columns of
/// `m`: the points of the Hermite-form fundamental box `0 ≤ v_i < h_ii`,
/// which meets every coset exactly once.
pub fn transversal_tile(m: &[Vec<i64>]) -> Result<Tile, TilingError> {
    let h = column_hnf(m)?;
    let d = h.len();
    let det: i128 = (0..d).map(|i| h[i][i]).product();
    if det < 2 {
        return Err(TilingError::TooSmall(det as usize));
    }
    if det > Limits::default().element_cap as i128 {
        return Err(TilingError::Invalid(format!("index {det} is too large")));
    }
    let mut reps: Vec<Vec<i64>> = vec![Vec::new()];
    for i in 0..d {
        reps = reps
            .into_iter()
            .flat_map(|v| {
                (0..h[i][i] as i64).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    Tile::new(GroupSpec::free_abelian(d as u32)?, reps.into_iter().map(Element::Vector).collect())
}

/// The named sets used as test fixtures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Ball { spec: GroupSpec, radius: u32 },
    BallMinusIdentity { spec: GroupSpec, radius: u32 },
    Sphere { spec: GroupSpec, radius: u32 },
    /// `{0..n-1}^dim` in `Z^dim`.
    Box { dim: u32, n: u32 },
    L1Ball { dim: u32, radius: u32 },
    /// `{0..n-1}` in `Z`.
    Interval { n: u32 },
}

impl FromStr for Fixture {
    type Err = TilingError;

    /// `ball:free:2:1`, `ball-minus-identity:free:2:2`, `sphere:free:2:2`,
    /// `box:2:2`, `l1-ball:2:1`, `interval:4`.
    fn from_str(s: &str) -> Result<Self, TilingError> {
        let bad = || TilingError::Invalid(format!("unknown fixture {s:?}"));
        let (name, rest) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let grouped = || -> Result<(GroupSpec, u32), TilingError> {
            let (group, r) = rest.rsplit_once(':').ok_or_else(bad)?;
            Ok((group.parse::<GroupSpec>()?, num(r)?))
        };
        let pair = || -> Result<(u32, u32), TilingError> {
            let (a, b) = rest.split_once(':').ok_or_else(bad)?;
            Ok((num(a)?, num(b)?))
        };
        Ok(match name {
            "ball" => grouped().map(|(spec, radius)| Fixture::Ball { spec, radius })?,
            "ball-minus-identity" => grouped().map(|(spec, radius)| Fixture::BallMinusIdentity { spec, radius })?,
            "sphere" => grouped().map(|(spec, radius)| Fixture::Sphere { spec, radius })?,
            "box" => pair().map(|(dim, n)| Fixture::Box { dim, n })?,
            "l1-ball" => pair().map(|(dim, radius)| Fixture::L1Ball { dim, radius })?,
            "interval" => Fixture::Interval { n: num(rest)? },
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Ball { spec, radius } => write!(f, "ball:{spec}:{radius}"),
            Fixture::BallMinusIdentity { spec, radius } => write!(f, "ball-minus-identity:{spec}:{radius}"),
            Fixture::Sphere { spec, radius } => write!(f, "sphere:{spec}:{radius}"),
            Fixture::Box { dim, n } => write!(f, "box:{dim}:{n}"),
            Fixture::L1Ball { dim, radius } => write!(f, "l1-ball:{dim}:{radius}"),
            Fixture::Interval { n } => write!(f, "interval:{n}"),
        }
    }
}

pub fn named_fixture(fixture: &Fixture) -> Result<Tile, TilingError> {
    let cap = Limits::default().element_cap;
    match *fixture {
        Fixture::Ball { spec, radius } => Tile::new(spec, ball(&spec, radius, cap)?),
        Fixture::BallMinusIdentity { spec, radius } => {
            let id = spec.identity();
            Tile::new(spec, ball(&spec, radius, cap)?.into_iter().filter(|g| *g != id).collect())
        }
        Fixture::Sphere { spec, radius } => {
            let elems = ball(&spec, radius, cap)?;
            let sphere = elems.into_iter().filter(|g| spec.length_unchecked(g) == radius as u64).collect();
            Tile::new(spec, sphere)
        }
        Fixture::Box { dim, n } => {
            let spec = GroupSpec::free_abelian(dim)?;
            let mut out = vec![Vec::new()];
            for _ in 0..dim {
                out = out
                    .into_iter()
                    .flat_map(|v: Vec<i64>| {
                        (0..n as i64).map(move |x| {
                            let mut w = v.clone();
                            w.push(x);
                            w
                        })
                    })
                    .collect();
            }
            Tile::new(spec, out.into_iter().map(Element::Vector).collect())
        }
        Fixture::L1Ball { dim, radius } => {
            let spec = GroupSpec::free_abelian(dim)?;
            Tile::new(spec, ball(&spec, radius, cap)?)
        }
        Fixture::Interval { n } => {
            Tile::new(GroupSpec::Integers, (0..n as i64).map(Element::Integer).collect())
        }
    }
}

/// A connected subset of the Cayley graph of a free group, containing ε,
/// grown one random neighbour at a time.
pub fn random_connected_set(spec: &GroupSpec, size: usize, seed: u64) -> Result<Tile, TilingError> {
    let rank = spec.require_free()? as i8;
    if size < 2 {
        return Err(TilingError::TooSmall(size));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = vec![Word::identity()];
    let mut seen: HashSet<Word> = order.iter().cloned().collect();
    while order.len() < size {
        let base = &order[rng.gen_range(0..order.len())];
        let mut letter = rng.gen_range(1..=rank);
        if rng.gen_bool(0.5) {
            letter = -letter;
        }
        let next = base.mul(&Word::from_letters(vec![letter]));
        if seen.insert(next.clone()) {
            order.push(next);
        }
    }
    Tile::new(*spec, order.into_iter().map(Element::Word).collect())
}
