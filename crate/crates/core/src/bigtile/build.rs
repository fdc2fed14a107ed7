//! The canonical tiling by shifts of `F = K ∪ {ξ}`, evaluated locally.
//!
//! Phase A pairs up `C` along the chains of `φ(s) = s·v⁻¹·ξ` and places
//! `s·v⁻¹·F ⊇ {s, φ(s)}` for every chain element `s` at even depth (the
//! chain start has depth 0). Phase B runs greedily over `B = Γ ∖ A` in ball
//! order, placing `x·ξ⁻¹·F ∋ x` for each `x` not yet covered.
//!
//! Neither phase needs a materialised ball. A chain start is found by
//! walking `s ↦ s·ξ⁻¹·v` backwards while staying in `C`. For phase B: a
//! placed root `x` lies outside `C`, so `|xξ⁻¹| ≥ |x| + r` and every other
//! element `xξ⁻¹k` of its shift is longer than `x` (as `r > |k|`). Hence `x`
//! is covered by an earlier shift iff `y = x·k⁻¹·ξ` is a root for some
//! `k ∈ K` with `|y| < |x|`, which is a recursion on length.
//!
//! The truncation emits every shift that meets the core ball
//! `B_{R − |ξ| − max|k| − 1}`; all of them then lie inside `B_R`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::geometry::Membership;
use super::xi::XiCertificate;
use super::{BigTileError, BigTileProblem};
use crate::group::{ball_size, Element, FreeBallIter, GroupError, Word};
use crate::tiling::{PartialTiling, Tile};
use crate::Limits;

/// Backward steps after which a chain of `C` is declared bi-infinite.
const CHAIN_GUARD: usize = 10_000;

struct Canonical {
    membership: Membership,
    xi: Word,
    xi_inv: Word,
    v: Word,
    v_inv: Word,
    k: Vec<Word>,
    f_inv: Vec<Word>,
    firsts: HashMap<Word, bool>,
    roots: HashMap<Word, bool>,
}

impl Canonical {
    fn new(problem: &BigTileProblem, cert: &XiCertificate) -> Result<Self, BigTileError> {
        if !cert.accepted {
            return Err(BigTileError::NotAccepted(cert.xi.to_string()));
        }
        let v = problem.v().ok_or_else(|| BigTileError::Singleton(problem.k()[0].to_string()))?.clone();
        if cert.r <= problem.max_len() {
            return Err(BigTileError::RadiusTooSmall { r: cert.r, max_len: problem.max_len() });
        }
        let xi = cert.xi.clone();
        let k = problem.normalized_k().to_vec();
        let f_inv = k.iter().chain([&xi]).map(Word::inverse).collect();
        Ok(Canonical {
            membership: Membership::new(&xi, cert.r)?,
            xi_inv: xi.inverse(),
            v_inv: v.inverse(),
            xi,
            v,
            k,
            f_inv,
            firsts: HashMap::new(),
            roots: HashMap::new(),
        })
    }

    fn phi(&self, s: &Word) -> Word {
        s.mul(&self.v_inv).mul(&self.xi)
    }

    /// For `c ∈ C`: does `c` sit at even depth in its chain?
    fn pair_first(&mut self, c: &Word) -> Result<bool, BigTileError> {
        if let Some(&b) = self.firsts.get(c) {
            return Ok(b);
        }
        let mut cur = c.clone();
        let mut depth = 0;
        loop {
            let prev = cur.mul(&self.xi_inv).mul(&self.v);
            if !self.membership.in_c(&prev) {
                break;
            }
            cur = prev;
            depth += 1;
            if depth > CHAIN_GUARD {
                return Err(BigTileError::BiInfiniteChain(c.to_string(), CHAIN_GUARD));
            }
        }
        let first = depth % 2 == 0;
        if first {
            let next = self.phi(c);
            if !self.membership.in_c(&next) {
                return Err(BigTileError::Invariant(format!("φ({c}) = {next} is not in C")));
            }
        }
        self.firsts.insert(c.clone(), first);
        Ok(first)
    }

    /// The chain element `s` whose phase-A shift `s·v⁻¹·F` contains `e`.
    fn phase_a_owner(&mut self, e: &Word) -> Result<Option<Word>, BigTileError> {
        for i in 0..self.f_inv.len() {
            let c = e.mul(&self.f_inv[i]).mul(&self.v);
            if self.membership.in_c(&c) && self.pair_first(&c)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Is `x` a phase-B root, i.e. in `B` and uncovered when the greedy
    /// loop reaches it?
    fn is_root(&mut self, x: &Word) -> Result<bool, BigTileError> {
        if let Some(&b) = self.roots.get(x) {
            return Ok(b);
        }
        let mut root = self.phase_a_owner(x)?.is_none();
        if root {
            for i in 0..self.k.len() {
                let y = x.mul(&self.k[i].inverse()).mul(&self.xi);
                if y.len() < x.len() && self.is_root(&y)? {
                    root = false;
                    break;
                }
            }
        }
        self.roots.insert(x.clone(), root);
        Ok(root)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseAPair {
    pub first: Word,
    pub second: Word,
    pub center: Word,
}

/// One phase-B placement: the least uncovered element of `B` and its center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyStep {
    pub root: Word,
    pub center: Word,
}

/// The rules of the infinite tiling, independent of any truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicDescription {
    pub c_suffix: Word,
    pub s_plus_suffix: Word,
    pub chain_step: Word,
    pub phase_a: String,
    pub phase_b: String,
}

/// A truncation of the canonical tiling.
///
/// `tile`, `centers` and `region_radius` are in the coordinates of `K` as
/// given and form a [`PartialTiling`]; the phase lists, log and `xi` are in
/// the normalised coordinates of `K'`, where center `g` corresponds to
/// `g·k₀⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigTiling {
    pub tile: Tile,
    pub centers: Vec<Element>,
    pub region_radius: u32,
    pub core_radius: u32,
    pub translation: Word,
    pub normalized_k: Vec<Word>,
    pub xi: Word,
    pub r: u32,
    pub phase_a: Vec<PhaseAPair>,
    pub phase_a_centers: Vec<Word>,
    pub phase_b_centers: Vec<Word>,
    pub greedy_log: Vec<GreedyStep>,
    /// Shifts that would leave `B_R` and were withheld.
    pub frontier: Vec<Word>,
    pub certificate: XiCertificate,
    pub symbolic: SymbolicDescription,
}

impl BigTiling {
    pub fn to_partial_tiling(&self) -> Result<PartialTiling, BigTileError> {
        Ok(PartialTiling::new(self.tile.clone(), self.centers.clone(), self.region_radius)?)
    }

    /// `F = K' ∪ {ξ}`.
    pub fn normalized_tile(&self) -> Vec<Word> {
        self.normalized_k.iter().chain([&self.xi]).cloned().collect()
    }
}

fn shortlex_sorted(set: HashSet<Word>) -> Vec<Word> {
    let mut v: Vec<Word> = set.into_iter().collect();
    v.sort_by(|a, b| a.shortlex_cmp(b));
    v
}

/// Evaluates the canonical tiling on every shift meeting the core ball of
/// radius `R − |ξ| − max|k| − 1`.
pub fn build_big_tiling(
    problem: &BigTileProblem,
    cert: &XiCertificate,
    region_radius: u32,
    limits: &Limits,
) -> Result<BigTiling, BigTileError> {
    let mut can = Canonical::new(problem, cert)?;
    let needed = cert.xi.len() as u32 + problem.max_len() + 1;
    let core_radius = region_radius
        .checked_sub(needed)
        .ok_or(BigTileError::RegionTooSmall { radius: region_radius, needed })?;
    let size = ball_size(problem.spec(), core_radius);
    if size > limits.element_cap as u128 {
        return Err(GroupError::CapExceeded { radius: core_radius, size, cap: limits.element_cap }.into());
    }

    let mut firsts = HashSet::new();
    let mut roots = HashSet::new();
    for e in FreeBallIter::new(problem.rank(), core_radius) {
        for i in 0..can.f_inv.len() {
            let ef = e.mul(&can.f_inv[i]);
            let c = ef.mul(&can.v);
            if can.membership.in_c(&c) && can.pair_first(&c)? {
                firsts.insert(c);
            }
            let y = ef.mul(&can.xi);
            if can.is_root(&y)? {
                roots.insert(y);
            }
        }
    }

    let f: Vec<Word> = can.k.iter().chain([&can.xi]).cloned().collect();
    let inside = |g: &Word| f.iter().all(|x| g.mul(x).len() <= region_radius as usize);
    let mut frontier = Vec::new();
    let mut phase_a = Vec::new();
    for s in shortlex_sorted(firsts) {
        let center = s.mul(&can.v_inv);
        if inside(&center) {
            phase_a.push(PhaseAPair { second: can.phi(&s), first: s, center });
        } else {
            frontier.push(center);
        }
    }
    let mut greedy_log = Vec::new();
    for x in shortlex_sorted(roots) {
        let center = x.mul(&can.xi_inv);
        if center.len() < x.len() + cert.r as usize {
            return Err(BigTileError::Invariant(format!("phase-B root {x} lies in C")));
        }
        if inside(&center) {
            greedy_log.push(GreedyStep { root: x, center });
        } else {
            frontier.push(center);
        }
    }

    let phase_a_centers: Vec<Word> = phase_a.iter().map(|p| p.center.clone()).collect();
    let phase_b_centers: Vec<Word> = greedy_log.iter().map(|s| s.center.clone()).collect();
    let k0_inv = problem.translation().inverse();
    let centers = phase_a_centers.iter().chain(&phase_b_centers).map(|g| Element::Word(g.mul(&k0_inv))).collect();
    let tile_elems = problem.k().iter().chain([&cert.xi_original]).cloned().map(Element::Word).collect();
    let tile = Tile::new(*problem.spec(), tile_elems)?;
    let m = &can.membership;
    let chain_step = can.v_inv.mul(&can.xi);
    let symbolic = SymbolicDescription {
        c_suffix: m.minus_suffix().clone(),
        s_plus_suffix: m.plus_suffix().clone(),
        phase_a: format!(
            "centers s·v⁻¹ for s ending in {} at even depth of its chain under s ↦ s·{}",
            m.minus_suffix(),
            chain_step
        ),
        phase_b: "centers x·ξ⁻¹ for x ∉ A in ball order, unless x = y·ξ⁻¹·k for an earlier center's root y"
            .to_string(),
        chain_step,
    };
    Ok(BigTiling {
        tile,
        centers,
        region_radius,
        core_radius,
        translation: problem.translation().clone(),
        normalized_k: can.k.clone(),
        xi: cert.xi.clone(),
        r: cert.r,
        phase_a,
        phase_a_centers,
        phase_b_centers,
        greedy_log,
        frontier,
        certificate: cert.clone(),
        symbolic,
    })
}

/// The chain pairs `(s, φ(s))` of `C ∩ B_R` with `s` at even depth, in ball
/// order of `s`; pairs whose second element leaves `B_R` are listed apart.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CPairs {
    pub pairs: Vec<PhaseAPair>,
    pub frontier_incomplete: Vec<Word>,
}

/// Enumerates `C ∩ B_R` as the reduced words `u·W⁻` and pairs it along the
/// chains of `φ`, checking `φ(s) ∈ C` for every pair start.
pub fn compute_c_pairs(
    problem: &BigTileProblem,
    cert: &XiCertificate,
    radius: u32,
    limits: &Limits,
) -> Result<CPairs, BigTileError> {
    let mut can = Canonical::new(problem, cert)?;
    let tail = can.membership.minus_suffix().clone();
    let mut out = CPairs::default();
    let Some(head) = radius.checked_sub(tail.len() as u32) else { return Ok(out) };
    let size = ball_size(problem.spec(), head);
    if size > limits.element_cap as u128 {
        return Err(GroupError::CapExceeded { radius: head, size, cap: limits.element_cap }.into());
    }
    let mut starts: Vec<Word> = Vec::new();
    for u in FreeBallIter::new(problem.rank(), head) {
        if u.last().is_some_and(|x| Some(-x) == tail.first()) {
            continue;
        }
        let c = u.mul(&tail);
        if can.pair_first(&c)? {
            starts.push(c);
        }
    }
    starts.sort_by(|a, b| a.shortlex_cmp(b));
    for s in starts {
        let second = can.phi(&s);
        if second.len() > radius as usize {
            out.frontier_incomplete.push(s);
        } else {
            out.pairs.push(PhaseAPair { center: s.mul(&can.v_inv), second, first: s });
        }
    }
    Ok(out)
}

/// Counters for the three ways two phase-B shifts `x_iξ⁻¹F`, `x_jξ⁻¹F`
/// (`i < j`) could meet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DisjointnessAudit {
    pub phase_b_shifts: usize,
    /// An earlier root lies in a later root's `x_jξ⁻¹K`.
    pub case_a: usize,
    /// A later root lies in an earlier root's `x_iξ⁻¹K`.
    pub case_b: usize,
    /// `x_iξ⁻¹K ∩ x_jξ⁻¹K ≠ ∅`.
    pub case_c: usize,
    /// Roots with `|xξ⁻¹| < |x| + r`.
    pub growth_failures: usize,
}

impl DisjointnessAudit {
    pub fn clean(&self) -> bool {
        self.case_a + self.case_b + self.case_c + self.growth_failures == 0
    }
}

/// Classifies every intersection among the phase-B shifts, with roots
/// recovered as `center·ξ` in list order.
pub fn audit_disjointness_cases(tiling: &BigTiling) -> DisjointnessAudit {
    let xi = &tiling.xi;
    let roots: Vec<Word> = tiling.phase_b_centers.iter().map(|c| c.mul(xi)).collect();
    let index: HashMap<&Word, usize> = roots.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut audit = DisjointnessAudit { phase_b_shifts: roots.len(), ..Default::default() };
    let mut owner: HashMap<Word, usize> = HashMap::new();
    for (j, center) in tiling.phase_b_centers.iter().enumerate() {
        if center.len() < roots[j].len() + tiling.r as usize {
            audit.growth_failures += 1;
        }
        for k in &tiling.normalized_k {
            let w = center.mul(k);
            match index.get(&w) {
                Some(&i) if i < j => audit.case_a += 1,
                Some(&i) if i > j => audit.case_b += 1,
                _ => {}
            }
            match owner.get(&w) {
                Some(&i) if i != j => audit.case_c += 1,
                Some(_) => {}
                None => {
                    owner.insert(w, j);
                }
            }
        }
    }
    audit
}

/// Rebuilds from scratch and checks the log entry by entry: each root is
/// re-derived as uncovered and minimal, and all lists match bit for bit.
pub fn replay_greedy_log(
    problem: &BigTileProblem,
    cert: &XiCertificate,
    tiling: &BigTiling,
    limits: &Limits,
) -> Result<bool, BigTileError> {
    let mut can = Canonical::new(problem, cert)?;
    for step in &tiling.greedy_log {
        if !can.is_root(&step.root)? || step.center != step.root.mul(&can.xi_inv) {
            return Ok(false);
        }
    }
    let fresh = build_big_tiling(problem, cert, tiling.region_radius, limits)?;
    Ok(fresh == *tiling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigtile::{find_xi, Mode, RadiusParams};
    use crate::group::GroupSpec;
    use crate::tiling::verify_partial_tiling;

    fn setup(k: &[&str]) -> (BigTileProblem, XiCertificate) {
        let p = BigTileProblem::parse(GroupSpec::free(2).unwrap(), k).unwrap();
        let params = RadiusParams::for_mode(&p, Mode::Relaxed { r_override: None }).unwrap();
        let cert = find_xi(&p, &params, 1_000_000, 0, &Limits::default()).unwrap();
        (p, cert)
    }

    #[test]
    fn truncation_verifies_and_audits_clean() {
        let limits = Limits::default();
        let (p, cert) = setup(&["", "a"]);
        let t = build_big_tiling(&p, &cert, cert.xi.len() as u32 + 4, &limits).unwrap();
        assert_eq!(t.core_radius, 2);
        assert!(t.frontier.is_empty());
        let rep = verify_partial_tiling(&t.to_partial_tiling().unwrap(), t.core_radius, &limits).unwrap();
        assert!(rep.disjoint && rep.covered, "{rep:?}");
        assert!(audit_disjointness_cases(&t).clean());
        assert!(replay_greedy_log(&p, &cert, &t, &limits).unwrap());
    }

    #[test]
    fn corrupted_center_is_caught_as_case_b() {
        let limits = Limits::default();
        let (p, cert) = setup(&["", "a"]);
        let mut t = build_big_tiling(&p, &cert, cert.xi.len() as u32 + 3, &limits).unwrap();
        let x0 = t.phase_b_centers[0].clone();
        let later_root = x0.mul(&Word::generator(1));
        t.phase_b_centers.push(later_root.mul(&t.xi.inverse()));
        assert!(audit_disjointness_cases(&t).case_b >= 1);
        assert!(!replay_greedy_log(&p, &cert, &t, &limits).unwrap());
    }

    #[test]
    fn root_recursion_matches_literal_greedy() {
        let (p, cert) = setup(&["", "a"]);
        let mut can = Canonical::new(&p, &cert).unwrap();
        let mut lit = Canonical::new(&p, &cert).unwrap();
        let mut covered: HashSet<Word> = HashSet::new();
        let mut roots = 0;
        for x in FreeBallIter::new(2, 9) {
            let root = lit.phase_a_owner(&x).unwrap().is_none() && !covered.contains(&x);
            if root {
                roots += 1;
                let center = x.mul(&lit.xi_inv);
                covered.extend(lit.k.iter().map(|k| center.mul(k)));
            }
            assert_eq!(can.is_root(&x).unwrap(), root, "x = {x}");
        }
        assert!(roots > 0);
    }

    #[test]
    fn c_pairs_follow_chain_parity() {
        let limits = Limits::default();
        let (p, cert) = setup(&["", "a"]);
        let m = Membership::new(&cert.xi, cert.r).unwrap();
        let radius = cert.xi.len() as u32 + 2;
        let out = compute_c_pairs(&p, &cert, radius, &limits).unwrap();
        let phi = p.v().unwrap().inverse().mul(&cert.xi);
        let firsts: HashSet<Word> =
            out.pairs.iter().map(|pr| pr.first.clone()).chain(out.frontier_incomplete.iter().cloned()).collect();
        assert!(!firsts.is_empty());
        for pr in &out.pairs {
            assert!(m.in_c(&pr.first) && m.in_c(&pr.second));
            assert_eq!(pr.second, pr.first.mul(&phi));
            assert!(pr.second.len() <= radius as usize);
        }
        // Walk forward from every chain start: exactly the even-depth
        // elements inside the ball are listed.
        for s in firsts.iter().filter(|s| !m.in_c(&s.mul(&phi.inverse()))) {
            let mut cur = s.clone();
            for depth in 0..6 {
                assert!(m.in_c(&cur));
                if cur.len() <= radius as usize {
                    assert_eq!(firsts.contains(&cur), depth % 2 == 0, "{cur} at depth {depth}");
                }
                cur = cur.mul(&phi);
            }
        }
        let tiny = compute_c_pairs(&p, &cert, 3, &limits).unwrap();
        assert!(tiny.pairs.is_empty() && tiny.frontier_incomplete.is_empty());
    }

    #[test]
    fn preconditions() {
        let limits = Limits::default();
        let (p, mut cert) = setup(&["", "a"]);
        assert!(matches!(build_big_tiling(&p, &cert, 5, &limits), Err(BigTileError::RegionTooSmall { .. })));
        cert.accepted = false;
        assert!(matches!(build_big_tiling(&p, &cert, 40, &limits), Err(BigTileError::NotAccepted(_))));
        let empty = BigTiling { phase_b_centers: vec![], ..build_big_tiling(&p, &setup(&["", "a"]).1, 20, &limits).unwrap() };
        assert_eq!(audit_disjointness_cases(&empty), DisjointnessAudit::default());
    }
}
