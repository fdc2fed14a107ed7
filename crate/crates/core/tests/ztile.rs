use proptest::prelude::*;
use tilekit::tiling::decide_z_tile;
use tilekit::ztile::*;
use tilekit::Limits;

/// All A ⊆ [0,10] with 0 ∈ A and |A| ∈ {2,3,5}.
fn corpus() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << 10) {
        let set: Vec<i64> = std::iter::once(0).chain((1..=10).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
        if [2, 3, 5].contains(&set.len()) {
            out.push(set);
        }
    }
    out
}

#[test]
fn corpus_has_265_sets() {
    assert_eq!(corpus().len(), 265);
}

#[test]
fn newman_agrees_with_direct_decision() {
    let limits = Limits::default();
    for a in corpus() {
        let tile = decide_z_tile(&a, &limits).unwrap().is_tile();
        assert_eq!(newman_prime_test(&a).unwrap(), tile, "{a:?}");
    }
}

#[test]
fn coven_meyerowitz_implications_on_corpus() {
    let limits = Limits::default();
    for a in corpus() {
        let tile = decide_z_tile(&a, &limits).unwrap().is_tile();
        let t1 = check_t1(&a).unwrap();
        let t2 = check_t2(&a).unwrap();
        assert!(!tile || t1, "tile without T1: {a:?}");
        assert!(!(t1 && t2) || tile, "T1 and T2 but not a tile: {a:?}");
        assert!(analyze(&a, &limits).unwrap().agreement.all_hold());
    }
}

#[test]
fn zero_one_x_tiles_iff_x_is_2_mod_3() {
    for x in 2..=20 {
        assert_eq!(newman_prime_test(&[0, 1, x]).unwrap(), x % 3 == 2, "x = {x}");
    }
}

#[test]
fn cyclotomics_multiply_to_x_pow_n_minus_one() {
    let mut cyclo = Cyclotomics::new();
    for n in 1..=30u64 {
        let mut prod = Poly::one();
        for d in (1..=n).filter(|d| n % d == 0) {
            prod = prod.mul(cyclo.get(d));
        }
        let mut expect = vec![0i64; n as usize + 1];
        expect[0] = -1;
        expect[n as usize] = 1;
        assert_eq!(prod, Poly::from_coeffs(expect), "n = {n}");
    }
}

#[test]
fn cyclotomic_degree_is_euler_phi() {
    for d in 1..=60u64 {
        let phi = (1..=d).filter(|k| num_integer::gcd(*k, d) == 1).count();
        assert_eq!(cyclotomic(d).unwrap().degree(), Some(phi));
    }
}

proptest! {
    #[test]
    fn mask_is_shift_invariant(set in prop::collection::btree_set(-50i64..50, 1..8), t in -1000i64..1000) {
        let a: Vec<i64> = set.iter().copied().collect();
        let shifted: Vec<i64> = a.iter().map(|x| x + t).collect();
        prop_assert_eq!(mask_polynomial(&a).unwrap(), mask_polynomial(&shifted).unwrap());
    }

    #[test]
    fn mask_value_at_one_is_cardinality(set in prop::collection::btree_set(0i64..60, 1..10)) {
        let a: Vec<i64> = set.iter().copied().collect();
        let m = mask_polynomial(&a).unwrap();
        prop_assert_eq!(m.value_at_one(), a.len());
        prop_assert_eq!(m.to_poly().eval_one(), num_bigint::BigInt::from(a.len()));
        prop_assert_eq!(m.exponents()[0], 0);
    }

    #[test]
    fn index_sets_are_exact_divisors(set in prop::collection::btree_set(0i64..12, 2..6)) {
        let a: Vec<i64> = set.iter().copied().collect();
        let s = compute_index_sets(&a).unwrap();
        let poly = mask_polynomial(&a).unwrap().to_poly();
        // Oracle: Φ_d | A iff A vanishes at every primitive d-th root; test via
        // A mod (z^d - 1) being divisible, for every d up to 2·deg² + 2.
        let deg = poly.degree().unwrap() as u64;
        let mut cyclo = Cyclotomics::new();
        for d in 2..=2 * deg * deg + 2 {
            let phi = cyclo.get(d).clone();
            let (_, r) = poly.div_rem(&phi).unwrap();
            prop_assert_eq!(r.is_zero(), s.r_a.contains(&d), "d = {}", d);
        }
        for d in &s.s_a {
            prop_assert!(s.r_a.contains(d));
        }
    }
}
