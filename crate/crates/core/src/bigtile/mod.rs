//! Extending a finite `K ⊂ F_k` to a tile `K ∪ {ξ}`.
//!
//! The pipeline: normalise `K` so it contains the identity, pick a radius
//! `r`, search for a word `ξ` whose suffix sets are well behaved
//! ([`find_xi`]), then evaluate the canonical two-phase tiling by shifts of
//! `K ∪ {ξ}` around a core ball ([`build_big_tiling`]).
//!
//! Notation, for `L = |ξ|`:
//!
//! * `S⁺ = {x : |xξ| < |x| + r}`, `C = S⁻ = {x : |xξ⁻¹| < |x| + r}`,
//!   `S = S⁺ ∪ C`, `M = S⁺ ∩ C`.
//! * In a tree `|xξ| = |x| + L − 2c` with `c` the cancellation, so `x ∈ S⁺`
//!   iff `x` ends with the inverse of the prefix of `ξ` of length
//!   `j₀ = ⌊(L − r)/2⌋ + 1`, and `x ∈ C` iff `x` ends with the suffix of `ξ`
//!   of length `j₀`. Every check below is built on this.

mod build;
mod geometry;
mod growth;
mod xi;

use serde::Serialize;
use thiserror::Error;

use crate::group::{Element, GroupError, GroupSpec, Word};
use crate::tiling::{Tile, TilingError};

pub use build::{
    audit_disjointness_cases, build_big_tiling, compute_c_pairs, replay_greedy_log, BigTiling, CPairs, DisjointnessAudit, GreedyStep,
    PhaseAPair, SymbolicDescription,
};
pub use geometry::{
    check_m_empty, check_s_separated, s_separation_by_connectors, Membership,
};
pub use growth::{check_growth, lemma1_check, GrowthReport};
pub use xi::{certify_xi, find_xi, CertificateChecks, CheckMethod, CheckOutcome, XiCertificate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BigTileError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error("the construction needs a free group of rank at least 2, got {0}")]
    Unsupported(String),
    #[error("K must be nonempty")]
    EmptyK,
    #[error("K = {{{0}}} is a singleton; use singleton_tile")]
    Singleton(String),
    #[error("singleton_tile needs |K| = 1, got {0}")]
    NotSingleton(usize),
    #[error("r = {r} must exceed max |g| = {max_len} over the normalised K")]
    RadiusTooSmall { r: u32, max_len: u32 },
    #[error("|ξ| = {len} must exceed r = {r}")]
    XiTooShort { len: usize, r: u32 },
    #[error("ξ = {0} is not cyclically reduced")]
    NotCyclicallyReduced(String),
    #[error("no certified ξ among {tried} candidates")]
    BudgetExhausted { tried: u64 },
    #[error("certificate for ξ = {0} is not accepted")]
    NotAccepted(String),
    #[error("region radius {radius} leaves no core ball (need at least {needed})")]
    RegionTooSmall { radius: u32, needed: u32 },
    #[error("chain of C through {0} has no start within {1} steps")]
    BiInfiniteChain(String, usize),
    #[error("construction invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Invalid(String),
}

/// A finite `K` in a free group, normalised so that it contains the identity.
///
/// `K` is translated on the left by `k₀⁻¹`, where `k₀` is its least element
/// in ball order; the normalised set `K' = k₀⁻¹K` contains `ε`, and `v` is
/// its least non-identity element. A tile `F` for `K'` gives the tile `k₀F`
/// for `K`, with the same shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigTileProblem {
    spec: GroupSpec,
    rank: u32,
    k: Vec<Word>,
    translation: Word,
    normalized: Vec<Word>,
}

impl BigTileProblem {
    pub fn new(spec: GroupSpec, k: &[Element]) -> Result<Self, BigTileError> {
        let rank = match spec {
            GroupSpec::Free { rank } if rank >= 2 => rank,
            _ => return Err(BigTileError::Unsupported(spec.to_string())),
        };
        if k.is_empty() {
            return Err(BigTileError::EmptyK);
        }
        let mut words = Vec::with_capacity(k.len());
        for g in k {
            spec.check(g)?;
            words.push(g.as_word().expect("checked free element").clone());
        }
        words.sort_by(|a, b| a.shortlex_cmp(b));
        words.dedup();
        let translation = words[0].clone();
        let inv = translation.inverse();
        let mut normalized: Vec<Word> = words.iter().map(|g| inv.mul(g)).collect();
        normalized.sort_by(|a, b| a.shortlex_cmp(b));
        Ok(BigTileProblem { spec, rank, k: words, translation, normalized })
    }

    /// Parses each entry of `k` in the text syntax of `spec`.
    pub fn parse(spec: GroupSpec, k: &[&str]) -> Result<Self, BigTileError> {
        let elems = k.iter().map(|s| spec.parse_element(s)).collect::<Result<Vec<_>, _>>()?;
        BigTileProblem::new(spec, &elems)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `K` as given, deduplicated, in ball order.
    pub fn k(&self) -> &[Word] {
        &self.k
    }

    /// `k₀`, the least element of `K`.
    pub fn translation(&self) -> &Word {
        &self.translation
    }

    /// `K' = k₀⁻¹K`, in ball order; its first element is `ε`.
    pub fn normalized_k(&self) -> &[Word] {
        &self.normalized
    }

    /// The designated non-identity element of `K'`, if `|K| ≥ 2`.
    pub fn v(&self) -> Option<&Word> {
        self.normalized.get(1)
    }

    /// `max |g|` over `K'`.
    pub fn max_len(&self) -> u32 {
        self.normalized.iter().map(Word::len).max().unwrap_or(0) as u32
    }

    /// `max |g|` over `K ∪ K⁻¹` as given.
    pub fn max_len_as_given(&self) -> u32 {
        self.k.iter().map(Word::len).max().unwrap_or(0) as u32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    /// Constants as in the general construction: `r` from [`compute_r`],
    /// `|ξ| > 100r`, and both growth conditions.
    Paper,
    /// Any `r > max |g|`; only the conditions the covering argument consumes.
    Relaxed { r_override: Option<u32> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RadiusParams {
    pub r: u32,
    pub delta: u32,
    pub mode: Mode,
}

impl RadiusParams {
    /// Parameters for `mode`; relaxed mode defaults to `r = max |g| + 1`.
    pub fn for_mode(problem: &BigTileProblem, mode: Mode) -> Result<Self, BigTileError> {
        let params = match mode {
            Mode::Paper => compute_r(problem, 0),
            Mode::Relaxed { r_override } => {
                RadiusParams { r: r_override.unwrap_or(problem.max_len() + 1), delta: 0, mode }
            }
        };
        if params.r <= problem.max_len() {
            return Err(BigTileError::RadiusTooSmall { r: params.r, max_len: problem.max_len() });
        }
        Ok(params)
    }
}

/// `r = 4·max(max{|g| : g ∈ K ∪ K⁻¹}, ⌊δ⌋ + 1) + 1`, evaluated on `K` as
/// given (so enlarging `K` never lowers `r`). Since every element of the
/// normalised `K'` has length at most twice that maximum, this `r` also
/// exceeds `max |g|` over `K'`.
pub fn compute_r(problem: &BigTileProblem, delta: u32) -> RadiusParams {
    let m = problem.max_len_as_given().max(delta + 1);
    RadiusParams { r: 4 * m + 1, delta, mode: Mode::Paper }
}

/// `{u, u·a₁}` for `K = {u}`: a two-element set `{g, gx}` with `x` of
/// infinite order always tiles.
pub fn singleton_tile(problem: &BigTileProblem) -> Result<Tile, BigTileError> {
    let [u] = problem.k() else {
        return Err(BigTileError::NotSingleton(problem.k().len()));
    };
    let ua = u.mul(&Word::generator(1));
    Ok(Tile::new(problem.spec, vec![Element::Word(u.clone()), Element::Word(ua)])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(k: &[&str]) -> BigTileProblem {
        BigTileProblem::parse(GroupSpec::free(2).unwrap(), k).unwrap()
    }

    #[test]
    fn normalisation() {
        let p = problem(&["b", "ba", "bB"]);
        assert_eq!(p.translation().to_string(), "");
        let p = problem(&["ba", "b"]);
        assert_eq!(p.translation().to_string(), "b");
        assert_eq!(p.normalized_k().iter().map(|w| w.to_string()).collect::<Vec<_>>(), ["", "a"]);
        assert_eq!(p.v().unwrap().to_string(), "a");
        let p = problem(&["", "b", "a"]);
        assert_eq!(p.v().unwrap().to_string(), "a");
        assert!(BigTileProblem::parse(GroupSpec::free(1).unwrap(), &["", "a"]).is_err());
        assert!(BigTileProblem::parse(GroupSpec::Integers, &["0"]).is_err());
        assert!(matches!(BigTileProblem::new(GroupSpec::free(2).unwrap(), &[]), Err(BigTileError::EmptyK)));
    }

    #[test]
    fn radius_formula() {
        assert_eq!(compute_r(&problem(&["", "a", "b"]), 0).r, 5);
        assert_eq!(compute_r(&problem(&["", "aba"]), 0).r, 13);
        assert_eq!(compute_r(&problem(&[""]), 0).r, 5);
        assert_eq!(compute_r(&problem(&["", "a"]), 2).r, 13);
        let relaxed = RadiusParams::for_mode(&problem(&["", "a", "b"]), Mode::Relaxed { r_override: None }).unwrap();
        assert_eq!(relaxed.r, 2);
        assert!(matches!(
            RadiusParams::for_mode(&problem(&["", "ab"]), Mode::Relaxed { r_override: Some(2) }),
            Err(BigTileError::RadiusTooSmall { .. })
        ));
    }

    #[test]
    fn singletons() {
        let tile = singleton_tile(&problem(&[""])).unwrap();
        assert_eq!(tile.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(), ["ε", "a"]);
        let tile = singleton_tile(&problem(&["b"])).unwrap();
        assert_eq!(tile.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(), ["b", "ba"]);
        assert!(matches!(singleton_tile(&problem(&["", "a"])), Err(BigTileError::NotSingleton(2))));
    }
}
