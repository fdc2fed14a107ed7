//! Growth of `ξ^i b ξ^j`: the `1.9|ξ|` conditions and the power version
//! used to rule out periodic `ξ`.

use serde::Serialize;

use super::xi::{CheckMethod, CheckOutcome};
use super::BigTileError;
use crate::group::{ball_size, FreeBallIter, GroupSpec, Letter, Word};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub xi_square_growth: CheckOutcome,
    pub conjugate_growth: CheckOutcome,
    /// `min |ξ^i b ξ^j|` over `i, j = ±1`, `1 ≤ |b| ≤ 4r`, when computed.
    pub min_conjugate_length: Option<usize>,
}

/// `10·len > 19·|ξ|`, i.e. `len > 1.9|ξ|` without rounding.
fn exceeds_1_9(len: usize, xi_len: usize) -> bool {
    10 * len > 19 * xi_len
}

/// `|ξ²| > 1.9|ξ|` and `|ξ^i b ξ^j| > 1.9|ξ|` for `1 ≤ |b| ≤ 4r`.
///
/// When `4r < |ξ|` the minimum over `b` is found structurally: write
/// `b = b₁b₂b₃` where `b₁` cancels a suffix of length `p` of `ξ^i` and `b₃`
/// a prefix of length `q` of `ξ^j`. If `b₂ = ε`, `b` is determined by
/// `(p, q)`; otherwise the length is `2|ξ| − p − q + |b₂|` and only the
/// shortest admissible `b₂` matters. Short `ξ` fall back to enumerating
/// `B_{4r}` (exhaustive, so still exact), or the check is skipped when that
/// ball is over the cap.
pub fn check_growth(spec: &GroupSpec, xi: &Word, r: u32, limits: &Limits) -> Result<GrowthReport, BigTileError> {
    let rank = match *spec {
        GroupSpec::Free { rank } => rank,
        _ => return Err(BigTileError::Unsupported(spec.to_string())),
    };
    if !xi.is_cyclically_reduced() {
        return Err(BigTileError::NotCyclicallyReduced(xi.to_string()));
    }
    let len = xi.len();
    let xi_square_growth = CheckOutcome {
        holds: exceeds_1_9(xi.mul(xi).len(), len),
        method: CheckMethod::ExactCancellation,
    };
    let bound = 4 * r as usize;
    let sides = [xi.clone(), xi.inverse()];
    let (min, method) = if bound < len {
        let min = sides
            .iter()
            .flat_map(|x| sides.iter().map(move |y| structural_min(x, y, bound, rank)))
            .min()
            .flatten();
        (min, CheckMethod::ExactStructural)
    } else if ball_size(spec, bound as u32) <= limits.element_cap as u128 {
        let mut min = None::<usize>;
        for b in FreeBallIter::new(rank, bound as u32).skip(1) {
            for x in &sides {
                let xb = x.mul(&b);
                for y in &sides {
                    let l = xb.mul(y).len();
                    min = Some(min.map_or(l, |m| m.min(l)));
                }
            }
        }
        (min, CheckMethod::Enumerated { radius: bound as u32 })
    } else {
        (None, CheckMethod::Skipped)
    };
    let holds = method != CheckMethod::Skipped && min.is_none_or(|m| exceeds_1_9(m, len));
    Ok(GrowthReport {
        xi_square_growth,
        conjugate_growth: CheckOutcome { holds, method },
        min_conjugate_length: min,
    })
}

/// `min |X b Y|` over `1 ≤ |b| ≤ bound`, for `|X| = |Y| > bound`.
fn structural_min(x: &Word, y: &Word, bound: usize, rank: u32) -> Option<usize> {
    let (xl, yl) = (x.letters(), y.letters());
    let n = xl.len();
    let mut best: Option<usize> = None;
    let mut consider = |l: usize| best = Some(best.map_or(l, |m: usize| m.min(l)));
    for p in 0..=bound {
        for q in 0..=bound - p {
            // b₂ = ε: b is fixed by the cancelled segments.
            let b = x.suffix(p).inverse().mul(&y.prefix(q).inverse());
            if (1..=bound).contains(&b.len()) {
                consider(x.mul(&b).mul(y).len());
            }
            // b₂ ≠ ε: its first letter may neither extend the cancellation
            // into X nor undo b₁, and symmetrically for its last letter.
            let mut first_bad = vec![-xl[n - p - 1]];
            if p > 0 {
                first_bad.push(xl[n - p]);
            }
            let mut last_bad = vec![-yl[q]];
            if q > 0 {
                last_bad.push(yl[q - 1]);
            }
            if let Some(m) = (1..=bound - p - q).find(|&m| reduced_word_exists(m, &first_bad, &last_bad, rank)) {
                consider(2 * n - p - q + m);
            }
        }
    }
    best
}

/// Is there a reduced word of length `m ≥ 1` avoiding the given first and
/// last letters?
fn reduced_word_exists(m: usize, first_bad: &[Letter], last_bad: &[Letter], rank: u32) -> bool {
    let letters: Vec<Letter> = (1..=rank as Letter).flat_map(|g| [g, -g]).collect();
    let mut ends: Vec<Letter> = letters.iter().copied().filter(|c| !first_bad.contains(c)).collect();
    for _ in 1..m {
        ends = letters.iter().copied().filter(|&c| ends.iter().any(|&e| e != -c)).collect();
    }
    ends.iter().any(|e| !last_bad.contains(e))
}

/// `|ξ^{mi} b ξ^{mj}| > n` for every `m ≥ 1`, `i, j = ±1` and `b ∈ B ∖ {ε}`.
///
/// For fixed `b`, `i`, `j` the length becomes an arithmetic progression in
/// `m` (common difference `2|ξ|` or `0`) once `m|ξ|` exceeds `|b| + |ξ|`: the
/// cancelled segments then lie inside the periodic word `ξ^{±∞}`. The
/// sequence is computed until the progression is confirmed, and its minimum
/// is the minimum of the computed prefix.
pub fn lemma1_check(spec: &GroupSpec, xi: &Word, b_set: &[Word], n: u64) -> Result<bool, BigTileError> {
    if !spec.is_free() {
        return Err(BigTileError::Unsupported(spec.to_string()));
    }
    if !xi.is_cyclically_reduced() {
        return Err(BigTileError::NotCyclicallyReduced(xi.to_string()));
    }
    let inv = xi.inverse();
    for b in b_set.iter().filter(|b| !b.is_empty()) {
        for x in [xi, &inv] {
            for y in [xi, &inv] {
                if power_min(x, b, y)? as u64 <= n {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn power_min(x: &Word, b: &Word, y: &Word) -> Result<usize, BigTileError> {
    let len = x.len().max(1);
    let settle = (b.len() + len) / len + 2;
    let (mut xm, mut ym) = (Word::identity(), Word::identity());
    let mut values = Vec::new();
    for m in 1..=settle + 64 {
        xm = xm.mul(x);
        ym = ym.mul(y);
        values.push(xm.mul(b).mul(&ym).len());
        if m >= settle + 3 {
            let k = values.len();
            let d = values[k - 1] as i64 - values[k - 2] as i64;
            if d >= 0 && (2..=3).all(|i| values[k - i] as i64 - values[k - i - 1] as i64 == d) {
                return Ok(*values.iter().min().unwrap());
            }
        }
    }
    Err(BigTileError::Invariant(format!("|ξ^m {b} ξ^m| did not settle into a progression")))
}
