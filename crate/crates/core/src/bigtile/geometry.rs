//! Membership in `S⁺`, `C`, `M` and the separation of `S`, decided from two
//! suffix words without enumerating the group.

use super::xi::{CheckMethod, CheckOutcome};
use super::BigTileError;
use crate::group::{ball_size, FreeBallIter, GroupSpec, Letter, Word};
use crate::Limits;

/// The two suffixes deciding membership for a fixed `(ξ, r)` with `|ξ| > r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    xi: Word,
    r: u32,
    threshold: usize,
    plus: Word,
    minus: Word,
}

impl Membership {
    pub fn new(xi: &Word, r: u32) -> Result<Self, BigTileError> {
        let len = xi.len();
        if len <= r as usize {
            return Err(BigTileError::XiTooShort { len, r });
        }
        let threshold = (len - r as usize) / 2 + 1;
        Ok(Membership {
            xi: xi.clone(),
            r,
            threshold,
            plus: xi.prefix(threshold).inverse(),
            minus: xi.suffix(threshold),
        })
    }

    pub fn xi(&self) -> &Word {
        &self.xi
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `j₀`: the cancellation needed for `|xξ^{±1}| < |x| + r`.
    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Suffix characterising `S⁺`: the inverse of `ξ`'s prefix of length `j₀`.
    pub fn plus_suffix(&self) -> &Word {
        &self.plus
    }

    /// Suffix characterising `C`: `ξ`'s suffix of length `j₀`.
    pub fn minus_suffix(&self) -> &Word {
        &self.minus
    }

    pub fn in_s_plus(&self, x: &Word) -> bool {
        x.ends_with(&self.plus)
    }

    pub fn in_c(&self, x: &Word) -> bool {
        x.ends_with(&self.minus)
    }

    pub fn in_s(&self, x: &Word) -> bool {
        self.in_s_plus(x) || self.in_c(x)
    }

    pub fn in_m(&self, x: &Word) -> bool {
        self.in_s_plus(x) && self.in_c(x)
    }

    /// Least distance `d ≤ 4r` between two distinct elements of `S`, or
    /// `None` when `S` is `4r`-separated.
    ///
    /// Two elements `y = p·y'`, `z = p·z'` whose reduced tails `y'`, `z'`
    /// start with different letters are at distance `|y'| + |z'|`. For each
    /// choice of suffixes `W₁, W₂ ∈ {W⁺, W⁻}` and tail lengths `a, b` the
    /// existence of such a pair with `y ∈ End(W₁)`, `z ∈ End(W₂)` is a
    /// condition on `W₁, W₂` alone:
    ///
    /// * `a, b < j₀`: the tails are tails of `W₁, W₂`, and `p` must end with
    ///   both remaining heads, so one head is a suffix of the other.
    /// * `a ≥ j₀`: `y' = f·W₁` with `f` free of length `a − j₀`; only its
    ///   first letter interacts with `p` and `z'`.
    pub fn min_s_distance(&self, rank: u32) -> Option<usize> {
        let bound = 4 * self.r as usize;
        let ws = [&self.plus, &self.minus];
        let mut best: Option<usize> = None;
        for w1 in ws {
            for w2 in ws {
                for a in 0..=bound {
                    for b in 0..=bound - a {
                        if a + b == 0 || best.is_some_and(|d| d <= a + b) {
                            continue;
                        }
                        if self.pair_exists(w1.letters(), w2.letters(), a, b, rank) {
                            best = Some(a + b);
                        }
                    }
                }
            }
        }
        best
    }

    fn pair_exists(&self, w1: &[Letter], w2: &[Letter], a: usize, b: usize, rank: u32) -> bool {
        let j = self.threshold;
        match (a < j, b < j) {
            (true, true) => {
                let (x1, x2) = (&w1[..j - a], &w2[..j - b]);
                let nested = x1.ends_with(x2) || x2.ends_with(x1);
                nested && (a == 0 || b == 0 || w1[j - a] != w2[j - b])
            }
            (false, true) => Self::long_short(w1, w2, a - j, b, j, rank),
            (true, false) => Self::long_short(w2, w1, b - j, a, j, rank),
            (false, false) => {
                let f1 = tail_first_letters(a - j, w1[0], rank);
                let f2 = tail_first_letters(b - j, w2[0], rank);
                f1.iter().any(|c1| f2.iter().any(|c2| c1 != c2))
            }
        }
    }

    /// `y' = f·W₁` with `|f| = free`; `z' = W₂[j−b..]` and `p` ends with
    /// `W₂[..j−b]`.
    fn long_short(w1: &[Letter], w2: &[Letter], free: usize, b: usize, j: usize, rank: u32) -> bool {
        let p_last = w2[j - b - 1];
        let z_first = (b > 0).then(|| w2[j - b]);
        tail_first_letters(free, w1[0], rank)
            .into_iter()
            .any(|c| c != -p_last && Some(c) != z_first)
    }
}

/// Letters that can start a reduced word `f·W` with `|f| = n`, where `W`
/// starts with `w0`.
fn tail_first_letters(n: usize, w0: Letter, rank: u32) -> Vec<Letter> {
    if n == 0 {
        return vec![w0];
    }
    all_letters(rank)
        .filter(|&c| {
            // Letters that can end a reduced word of length n starting with c.
            let mut ends = vec![c];
            for _ in 1..n {
                ends = all_letters(rank).filter(|&x| ends.iter().any(|&e| e != -x)).collect();
            }
            ends.iter().any(|&e| e != -w0)
        })
        .collect()
}

fn all_letters(rank: u32) -> impl Iterator<Item = Letter> {
    (1..=rank as Letter).flat_map(|g| [g, -g])
}

fn require_free(spec: &GroupSpec) -> Result<u32, BigTileError> {
    match *spec {
        GroupSpec::Free { rank } => Ok(rank),
        _ => Err(BigTileError::Unsupported(spec.to_string())),
    }
}

/// `M = ∅`, i.e. the two membership suffixes differ. For `|ξ| ≤ r` the
/// threshold degenerates and `M` is reported nonempty.
pub fn check_m_empty(spec: &GroupSpec, xi: &Word, r: u32) -> Result<CheckOutcome, BigTileError> {
    require_free(spec)?;
    let holds = match Membership::new(xi, r) {
        Ok(m) => m.plus_suffix() != m.minus_suffix(),
        Err(_) => false,
    };
    Ok(CheckOutcome { holds, method: CheckMethod::ExactCancellation })
}

/// `S` is `4r`-separated, by the closed form of [`Membership::min_s_distance`].
pub fn check_s_separated(spec: &GroupSpec, xi: &Word, r: u32) -> Result<CheckOutcome, BigTileError> {
    let rank = require_free(spec)?;
    let m = Membership::new(xi, r)?;
    Ok(CheckOutcome { holds: m.min_s_distance(rank).is_none(), method: CheckMethod::ExactStructural })
}

/// Least distance `≤ 4r` within `S` found by scanning connectors: for
/// `W₁, W₂` and `h ∈ B_{4r} ∖ {ε}`, some `y ∈ End(W₁)` has `yh ∈ End(W₂)`
/// iff `g = W₁hW₂⁻¹` is trivial, or `g` does not start with `W₁`'s first
/// letter, or does not end with the inverse of `W₂`'s first letter.
pub fn s_separation_by_connectors(
    spec: &GroupSpec,
    xi: &Word,
    r: u32,
    limits: &Limits,
) -> Result<Option<usize>, BigTileError> {
    let rank = require_free(spec)?;
    let m = Membership::new(xi, r)?;
    let radius = 4 * r;
    let size = ball_size(spec, radius);
    if size > limits.element_cap as u128 {
        return Err(crate::GroupError::CapExceeded { radius, size, cap: limits.element_cap }.into());
    }
    let ws = [m.plus_suffix(), m.minus_suffix()];
    let mut best: Option<usize> = None;
    for h in FreeBallIter::new(rank, radius).skip(1) {
        if best.is_some_and(|d| d <= h.len()) {
            break;
        }
        for w1 in ws {
            for w2 in ws {
                let g = w1.mul(&h).mul(&w2.inverse());
                let realisable =
                    g.is_empty() || g.first() != w1.first() || g.last() != w2.first().map(|x| -x);
                if realisable {
                    best = Some(h.len());
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn f2() -> GroupSpec {
        GroupSpec::free(2).unwrap()
    }

    #[test]
    fn suffixes() {
        let m = Membership::new(&w("abaB"), 2).unwrap();
        assert_eq!(m.threshold(), 2);
        assert_eq!(m.plus_suffix().to_string(), "BA");
        assert_eq!(m.minus_suffix().to_string(), "aB");
        // |x·ξ| < |x| + 2 once x ends with (ab)⁻¹.
        assert!(m.in_s_plus(&w("aaBA")));
        assert!(m.in_c(&w("baB")));
        assert!(!m.in_s(&w("ab")));
    }

    #[test]
    fn m_examples() {
        assert!(check_m_empty(&f2(), &w("abaB"), 2).unwrap().holds);
        assert!(check_m_empty(&f2(), &w("aaaaaaaaaa"), 2).unwrap().holds);
        assert!(!check_m_empty(&f2(), &w("ab"), 2).unwrap().holds);
        assert!(!check_m_empty(&f2(), &Word::identity(), 2).unwrap().holds);
        // ξ = a·b·a⁻¹ with r = 2: both suffixes are a⁻¹.
        assert!(!check_m_empty(&f2(), &w("abA"), 2).unwrap().holds);
    }

    #[test]
    fn periodic_words_are_not_separated() {
        for m in 3..=6 {
            let xi = Word::parse(&"ab".repeat(m), 2).unwrap();
            assert!(!check_s_separated(&f2(), &xi, 2).unwrap().holds);
        }
        assert!(matches!(check_s_separated(&f2(), &w("ab"), 2), Err(BigTileError::XiTooShort { .. })));
    }

    #[test]
    fn closed_form_matches_connector_scan() {
        let limits = Limits::default();
        for r in 1..=2u32 {
            for len in (r as usize + 1)..=(9 * r as usize + 1).min(12) {
                for xi in FreeBallIter::sphere(2, len as u32).step_by(7) {
                    let m = Membership::new(&xi, r).unwrap();
                    let scan = s_separation_by_connectors(&f2(), &xi, r, &limits).unwrap();
                    assert_eq!(m.min_s_distance(2), scan, "ξ = {xi}, r = {r}");
                }
            }
        }
    }

    #[test]
    fn shortest_separated_words_for_r_one() {
        let separated =
            |xi: &Word| xi.is_cyclically_reduced() && check_s_separated(&f2(), xi, 1).unwrap().holds;
        for len in 2..9 {
            assert!(!FreeBallIter::sphere(2, len).any(|xi| separated(&xi)), "length {len}");
        }
        assert!(separated(&w("aaaabaaaa")));
    }

    #[test]
    fn tail_letters() {
        assert_eq!(tail_first_letters(0, 2, 2), vec![2]);
        // A single letter before `a` must not be `A`.
        assert_eq!(tail_first_letters(1, 1, 2), vec![1, 2, -2]);
        assert_eq!(tail_first_letters(2, 1, 2).len(), 4);
    }
}
