//! Certificates for a candidate `ξ` and the search that produces them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::geometry::{check_m_empty, check_s_separated, Membership};
use super::growth::check_growth;
use super::{BigTileError, BigTileProblem, Mode, RadiusParams};
use crate::group::{FreeBallIter, Letter, Word};
use crate::Limits;

/// How a check was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum CheckMethod {
    /// Direct cancellation arithmetic on `ξ`.
    ExactCancellation,
    /// A closed-form case analysis over bounded parameters; no enumeration
    /// of the group.
    ExactStructural,
    /// Exhaustive over the connector words of `B_radius`.
    ConnectorScan { radius: u32 },
    /// Exhaustive over the quantified ball `B_radius`.
    Enumerated { radius: u32 },
    /// Not decided (ball over the cap).
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub holds: bool,
    #[serde(flatten)]
    pub method: CheckMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateChecks {
    pub m_empty: CheckOutcome,
    pub s_separated: CheckOutcome,
    pub xi_square_growth: CheckOutcome,
    pub conjugate_growth: CheckOutcome,
    pub v_inv_xi_nontorsion: CheckOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiCertificate {
    /// `ξ` for the normalised `K'`.
    pub xi: Word,
    /// `k₀ξ`, the element added to `K` as given.
    pub xi_original: Word,
    pub r: u32,
    pub mode: Mode,
    pub checks: CertificateChecks,
    /// `M = ∅ ∧ S 4r-separated ∧ v⁻¹ξ of infinite order`.
    pub accepted: bool,
    pub candidates_tried: u64,
}

impl XiCertificate {
    /// The extra requirements of paper mode: `|ξ| > 100r` and both growth
    /// conditions, decided without enumeration.
    pub fn meets_paper_conditions(&self) -> bool {
        let exact = |c: &CheckOutcome| {
            c.holds && matches!(c.method, CheckMethod::ExactCancellation | CheckMethod::ExactStructural)
        };
        self.xi.len() > 100 * self.r as usize
            && exact(&self.checks.xi_square_growth)
            && exact(&self.checks.conjugate_growth)
    }
}

/// Runs every check on `ξ` (given for the normalised `K'`).
pub fn certify_xi(
    problem: &BigTileProblem,
    params: &RadiusParams,
    xi: &Word,
    limits: &Limits,
) -> Result<XiCertificate, BigTileError> {
    let spec = problem.spec();
    let v = problem.v().ok_or_else(|| BigTileError::Singleton(problem.k()[0].to_string()))?;
    if xi.max_generator() > problem.rank() {
        return Err(BigTileError::Invalid(format!("ξ = {xi} uses generators beyond rank {}", problem.rank())));
    }
    let r = params.r;
    let m_empty = check_m_empty(spec, xi, r)?;
    let s_separated = if xi.len() > r as usize {
        check_s_separated(spec, xi, r)?
    } else {
        CheckOutcome { holds: false, method: CheckMethod::ExactCancellation }
    };
    let growth = check_growth(spec, xi, r, limits)?;
    if params.mode == Mode::Paper && growth.conjugate_growth.method != CheckMethod::ExactStructural {
        return Err(BigTileError::Invalid(format!(
            "paper mode needs |ξ| > 4r for the structural growth check; |ξ| = {}, r = {r}",
            xi.len()
        )));
    }
    let v_inv_xi_nontorsion = CheckOutcome { holds: xi != v, method: CheckMethod::ExactCancellation };
    let accepted = m_empty.holds && s_separated.holds && v_inv_xi_nontorsion.holds;
    Ok(XiCertificate {
        xi: xi.clone(),
        xi_original: problem.translation().mul(xi),
        r,
        mode: params.mode,
        checks: CertificateChecks {
            m_empty,
            s_separated,
            xi_square_growth: growth.xi_square_growth,
            conjugate_growth: growth.conjugate_growth,
            v_inv_xi_nontorsion,
        },
        accepted,
        candidates_tried: 0,
    })
}

fn aperiodic(xi: &Word) -> bool {
    xi.is_cyclically_reduced() && 2 * xi.smallest_period() > xi.len()
}

/// Searches for a certified `ξ`, examining at most `budget` candidates.
///
/// Relaxed mode walks aperiodic cyclically reduced words in ball order,
/// starting at length `max(r + 1, 9r)`: shorter words never give a
/// separated `S` (for a cyclically reduced `ξ` with `j₀ ≤ 4r` two elements
/// `uW⁻`, `uW⁻cW⁻` of `C`, or a pair built from the four products of the
/// membership suffixes, lie within `4r`). Paper mode draws random aperiodic
/// words of length `100r + 1` from a seeded generator and additionally
/// requires both growth conditions.
pub fn find_xi(
    problem: &BigTileProblem,
    params: &RadiusParams,
    budget: u64,
    seed: u64,
    limits: &Limits,
) -> Result<XiCertificate, BigTileError> {
    if problem.v().is_none() {
        return Err(BigTileError::Singleton(problem.k()[0].to_string()));
    }
    let rank = problem.rank();
    let r = params.r;
    let mut tried = 0u64;
    match params.mode {
        Mode::Relaxed { .. } => {
            let quick = |xi: &Word| -> bool {
                let m = Membership::new(xi, r).expect("length exceeds r");
                m.plus_suffix() != m.minus_suffix() && m.min_s_distance(rank).is_none()
            };
            let start = (r + 1).max(9 * r);
            for len in start.. {
                for xi in FreeBallIter::sphere(rank, len).filter(aperiodic) {
                    if tried == budget {
                        return Err(BigTileError::BudgetExhausted { tried });
                    }
                    tried += 1;
                    if problem.normalized_k().contains(&xi) || !quick(&xi) {
                        continue;
                    }
                    let mut cert = certify_xi(problem, params, &xi, limits)?;
                    if cert.accepted {
                        cert.candidates_tried = tried;
                        return Ok(cert);
                    }
                }
            }
            unreachable!("lengths are unbounded")
        }
        Mode::Paper => {
            let len = 100 * r as usize + 1;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            while tried < budget {
                let xi = random_reduced_word(&mut rng, rank, len);
                if !aperiodic(&xi) {
                    continue;
                }
                tried += 1;
                let mut cert = certify_xi(problem, params, &xi, limits)?;
                if cert.accepted && cert.meets_paper_conditions() {
                    cert.candidates_tried = tried;
                    return Ok(cert);
                }
            }
            Err(BigTileError::BudgetExhausted { tried })
        }
    }
}

fn random_reduced_word(rng: &mut ChaCha8Rng, rank: u32, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = rng.gen_range(1..=rank as Letter);
        let x = if rng.gen_bool(0.5) { g } else { -g };
        if letters.last() != Some(&-x) {
            letters.push(x);
        }
    }
    Word::from_letters(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn problem(k: &[&str]) -> BigTileProblem {
        BigTileProblem::parse(GroupSpec::free(2).unwrap(), k).unwrap()
    }

    fn relaxed(p: &BigTileProblem) -> RadiusParams {
        RadiusParams::for_mode(p, Mode::Relaxed { r_override: None }).unwrap()
    }

    #[test]
    fn relaxed_search_finds_shortest_certified_word() {
        let p = problem(&["", "a"]);
        let params = relaxed(&p);
        let cert = find_xi(&p, &params, 1_000_000, 0, &Limits::default()).unwrap();
        assert!(cert.accepted);
        assert_eq!(cert.xi.len(), 9 * params.r as usize);
        assert_eq!(cert.checks.s_separated.method, CheckMethod::ExactStructural);
        assert!(matches!(
            find_xi(&p, &params, 3, 0, &Limits::default()),
            Err(BigTileError::BudgetExhausted { tried: 3 })
        ));
    }

    #[test]
    fn identity_and_v_are_rejected() {
        let p = problem(&["", "a"]);
        let params = relaxed(&p);
        let cert = certify_xi(&p, &params, &Word::identity(), &Limits::default()).unwrap();
        assert!(!cert.accepted);
        assert!(!cert.checks.v_inv_xi_nontorsion.holds || !cert.checks.m_empty.holds);
        let cert = certify_xi(&p, &params, &Word::generator(1), &Limits::default()).unwrap();
        assert!(!cert.checks.v_inv_xi_nontorsion.holds);
        assert!(matches!(find_xi(&problem(&["b"]), &params, 10, 0, &Limits::default()), Err(BigTileError::Singleton(_))));
    }

    #[test]
    fn paper_mode_uses_exact_methods_only() {
        let p = problem(&["", "a"]);
        let params = RadiusParams::for_mode(&p, Mode::Paper).unwrap();
        assert_eq!(params.r, 5);
        let cert = find_xi(&p, &params, 50, 7, &Limits::default()).unwrap();
        assert!(cert.xi.len() > 500);
        assert!(cert.accepted && cert.meets_paper_conditions());
        let short = certify_xi(&p, &params, &Word::parse("aab", 2).unwrap(), &Limits::default());
        assert!(matches!(short, Err(BigTileError::Invalid(_))));
    }

    #[test]
    fn method_tags_serialise_flat() {
        let c = CheckOutcome { holds: true, method: CheckMethod::Enumerated { radius: 8 } };
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"holds":true,"method":"enumerated","radius":8}"#);
    }
}
