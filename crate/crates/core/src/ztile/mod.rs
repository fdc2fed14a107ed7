//! Tiling criteria for finite subsets of the integers expressed through the
//! mask polynomial `A(z) = Σ z^(a - min A)` and the cyclotomic polynomials
//! dividing it: Newman's test for prime cardinality and the
//! Coven–Meyerowitz conditions (T1) and (T2).

mod poly;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::tiling::{decide_z_tile, TileVerdict};
use crate::Limits;

pub use poly::{Cyclotomics, Poly};
use poly::{euler_phi, is_prime, prime_power_base};

/// Largest accepted degree of a mask polynomial.
pub const MAX_MASK_DEGREE: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZtileError {
    #[error("the set is empty")]
    Empty,
    #[error("the set needs at least {needed} elements, got {got}")]
    TooSmall { needed: usize, got: usize },
    #[error("|A| = {0} is not prime")]
    NotPrime(usize),
    #[error("cyclotomic index must be at least 1")]
    InvalidIndex,
    #[error("mask polynomial degree {0} exceeds {MAX_MASK_DEGREE}")]
    DegreeTooLarge(u64),
}

/// The 0/1 polynomial of a finite set of integers, normalised to constant
/// term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskPolynomial {
    exponents: Vec<u64>,
}

impl MaskPolynomial {
    /// Sorted exponents, starting with 0.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        *self.exponents.last().unwrap()
    }

    /// `A(1) = |A|`.
    pub fn value_at_one(&self) -> usize {
        self.exponents.len()
    }

    pub fn to_poly(&self) -> Poly {
        let mut c = vec![0i64; self.degree() as usize + 1];
        for &e in &self.exponents {
            c[e as usize] = 1;
        }
        Poly::from_coeffs(c)
    }
}

impl fmt::Display for MaskPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

impl Serialize for MaskPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn mask_polynomial(set: &[i64]) -> Result<MaskPolynomial, ZtileError> {
    let min = *set.iter().min().ok_or(ZtileError::Empty)?;
    let mut exponents: Vec<u64> = set.iter().map(|&a| (a as i128 - min as i128) as u64).collect();
    exponents.sort_unstable();
    exponents.dedup();
    let degree = *exponents.last().unwrap();
    if degree > MAX_MASK_DEGREE {
        return Err(ZtileError::DegreeTooLarge(degree));
    }
    Ok(MaskPolynomial { exponents })
}

pub fn cyclotomic(d: u64) -> Result<Poly, ZtileError> {
    if d == 0 {
        return Err(ZtileError::InvalidIndex);
    }
    Ok(Cyclotomics::new().get(d).clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicIndexSets {
    /// `d ≥ 2` with `Φ_d | A(z)`, increasing.
    pub r_a: Vec<u64>,
    /// The prime powers in `r_a`.
    pub s_a: Vec<u64>,
}

/// `d ≥ 2` can only index a divisor of a degree-`n` polynomial when
/// `φ(d) ≤ n`, and `φ(d) ≥ sqrt(d/2)` bounds those `d` by `2n² + 2`.
fn candidate_indices(degree: u64) -> impl Iterator<Item = u64> {
    (2..=2 * degree * degree + 2).filter(move |&d| euler_phi(d) <= degree)
}

pub fn compute_index_sets(set: &[i64]) -> Result<CyclotomicIndexSets, ZtileError> {
    let mask = mask_polynomial(set)?;
    if mask.value_at_one() < 2 {
        return Err(ZtileError::TooSmall { needed: 2, got: mask.value_at_one() });
    }
    let a = mask.to_poly();
    let mut cyclo = Cyclotomics::new();
    let r_a: Vec<u64> = candidate_indices(mask.degree()).filter(|&d| a.divisible_by(cyclo.get(d))).collect();
    let s_a = r_a.iter().copied().filter(|&d| prime_power_base(d).is_some()).collect();
    Ok(CyclotomicIndexSets { r_a, s_a })
}

/// (T1): `A(1) = Π p` over the prime powers `p^α` in `S_A`.
pub fn check_t1(set: &[i64]) -> Result<bool, ZtileError> {
    let sets = compute_index_sets(set)?;
    let size = mask_polynomial(set)?.value_at_one() as u128;
    let mut product: u128 = 1;
    for &s in &sets.s_a {
        product = match product.checked_mul(prime_power_base(s).unwrap() as u128) {
            Some(p) if p <= size => p,
            _ => return Ok(false),
        };
    }
    Ok(product == size)
}

/// (T2): every product of prime powers from `S_A` with pairwise distinct
/// primes lies in `R_A`.
pub fn check_t2(set: &[i64]) -> Result<bool, ZtileError> {
    let sets = compute_index_sets(set)?;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &s in &sets.s_a {
        by_prime.entry(prime_power_base(s).unwrap()).or_default().push(s);
    }
    // Products built prime by prime; each entry records how many factors it has.
    let mut products: Vec<(u128, usize)> = vec![(1, 0)];
    for powers in by_prime.values() {
        let mut next = products.clone();
        for &(p, k) in &products {
            for &q in powers {
                next.push((p.saturating_mul(q as u128), k + 1));
            }
        }
        products = next;
    }
    Ok(products
        .into_iter()
        .filter(|&(_, k)| k >= 2)
        .all(|(p, _)| u64::try_from(p).is_ok_and(|p| sets.r_a.binary_search(&p).is_ok())))
}

/// For `|A| = p` prime: `A` tiles `Z` iff some `Φ_{p^k}` divides `A(z)`.
pub fn newman_prime_test(set: &[i64]) -> Result<bool, ZtileError> {
    let mask = mask_polynomial(set)?;
    let p = mask.value_at_one();
    if !is_prime(p as u64) {
        return Err(ZtileError::NotPrime(p));
    }
    let p = p as u64;
    let a = mask.to_poly();
    let mut cyclo = Cyclotomics::new();
    let mut q = p;
    // φ(p^k) = p^(k-1)(p-1) grows, so stop once it passes the degree.
    while euler_phi(q) <= mask.degree() {
        if a.divisible_by(cyclo.get(q)) {
            return Ok(true);
        }
        q *= p;
    }
    Ok(false)
}

/// Everything the polynomial criteria and the direct decision say about `A`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub struct ZtileReport {
    #[serde(rename = "A")]
    pub set: Vec<i64>,
    pub mask: MaskPolynomial,
    #[serde(rename = "R_A")]
    pub r_a: Vec<u64>,
    #[serde(rename = "S_A")]
    pub s_a: Vec<u64>,
    #[serde(rename = "T1")]
    pub t1: bool,
    #[serde(rename = "T2")]
    pub t2: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub newman: Option<bool>,
    /// `None` when the direct decision stopped at the period cap.
    pub decide_z_tile: Option<TileVerdict>,
    pub agreement: Agreement,
}

/// Consistency of the criteria with the direct decision; `None` where a
/// comparison does not apply.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Agreement {
    /// Newman's test equals the decision.
    pub newman: Option<bool>,
    /// Tile ⇒ (T1).
    pub tile_implies_t1: Option<bool>,
    /// (T1) ∧ (T2) ⇒ tile.
    pub t1_t2_imply_tile: Option<bool>,
}

impl Agreement {
    /// No comparison failed.
    pub fn all_hold(&self) -> bool {
        [self.newman, self.tile_implies_t1, self.t1_t2_imply_tile].into_iter().all(|x| x != Some(false))
    }
}

pub fn analyze(set: &[i64], limits: &Limits) -> Result<ZtileReport, ZtileError> {
    let mask = mask_polynomial(set)?;
    let sets = compute_index_sets(set)?;
    let t1 = check_t1(set)?;
    let t2 = check_t2(set)?;
    let newman = match newman_prime_test(set) {
        Ok(b) => Some(b),
        Err(ZtileError::NotPrime(_)) => None,
        Err(e) => return Err(e),
    };
    let verdict = decide_z_tile(set, limits).ok();
    let tile = verdict.as_ref().map(TileVerdict::is_tile);
    let agreement = Agreement {
        newman: newman.zip(tile).map(|(n, t)| n == t),
        tile_implies_t1: tile.map(|t| !t || t1),
        t1_t2_imply_tile: tile.map(|t| !(t1 && t2) || t),
    };
    let mut sorted: Vec<i64> = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(ZtileReport {
        set: sorted,
        mask,
        r_a: sets.r_a,
        s_a: sets.s_a,
        t1,
        t2,
        newman,
        decide_z_tile: verdict,
        agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks() {
        assert_eq!(mask_polynomial(&[2, 3, 5]).unwrap().to_string(), "1 + z + z^3");
        assert_eq!(mask_polynomial(&[0]).unwrap().to_string(), "1");
        assert_eq!(mask_polynomial(&[0, 1, 2]).unwrap().exponents(), &[0, 1, 2]);
        assert_eq!(mask_polynomial(&[]), Err(ZtileError::Empty));
        assert!(matches!(mask_polynomial(&[0, 1 << 20]), Err(ZtileError::DegreeTooLarge(_))));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), Poly::from_coeffs([-1, 1]));
        assert_eq!(cyclotomic(3).unwrap(), Poly::from_coeffs([1, 1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), Poly::from_coeffs([1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(0), Err(ZtileError::InvalidIndex));
    }

    #[test]
    fn index_sets() {
        let s = compute_index_sets(&[0, 1, 2]).unwrap();
        assert_eq!((s.r_a, s.s_a), (vec![3], vec![3]));
        let s = compute_index_sets(&[0, 2]).unwrap();
        assert_eq!((s.r_a, s.s_a), (vec![4], vec![4]));
        assert!(compute_index_sets(&[0, 1, 3]).unwrap().s_a.is_empty());
        assert!(compute_index_sets(&[5]).is_err());
    }

    #[test]
    fn t1_t2_examples() {
        assert!(check_t1(&[0, 1, 2]).unwrap());
        assert!(!check_t1(&[0, 1, 3]).unwrap());
        assert!(check_t1(&[0, 2]).unwrap());
        assert!(check_t2(&[0, 1, 2]).unwrap());
        assert!(check_t2(&[0, 1, 2, 3, 4, 5]).unwrap());
        assert!(check_t2(&[0, 1, 3]).unwrap());
        let s = compute_index_sets(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(s.s_a, vec![2, 3]);
        assert!(s.r_a.contains(&6));
    }

    #[test]
    fn newman_examples() {
        assert!(newman_prime_test(&[0, 1, 2]).unwrap());
        assert!(!newman_prime_test(&[0, 1, 3]).unwrap());
        assert!(newman_prime_test(&[0, 1, 5]).unwrap());
        assert_eq!(newman_prime_test(&[0, 1, 2, 3]), Err(ZtileError::NotPrime(4)));
    }

    #[test]
    fn analyze_report_shape() {
        let r = analyze(&[0, 1, 5], &Limits::default()).unwrap();
        assert!(r.agreement.all_hold());
        let v = serde_json::to_value(&r).unwrap();
        for key in ["A", "mask", "R_A", "S_A", "T1", "T2", "newman", "decide_z_tile", "agreement"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let r = analyze(&[0, 1, 2, 3], &Limits::default()).unwrap();
        assert_eq!(r.newman, None);
    }
}
