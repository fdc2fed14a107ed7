//! Dense univariate polynomials over arbitrary-precision integers.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Coefficients from the constant term upwards, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = Poly(coeffs.into_iter().map(Into::into).collect());
        p.trim();
        p
    }

    /// `z^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] += BigInt::one();
        Poly::from_coeffs(c)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        Poly::from_coeffs((0..n).map(|i| get(&self.0, i) + get(&other.0, i)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }

    /// Quotient and remainder by a divisor whose leading coefficient is ±1,
    /// so the division stays in `Z[z]`. `None` for any other divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let dd = divisor.degree()?;
        let lead = divisor.0[dd].clone();
        if !lead.abs().is_one() {
            return None;
        }
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * &lead;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Some((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact divisibility by a polynomial with unit leading coefficient.
    pub fn divisible_by(&self, divisor: &Poly) -> bool {
        self.div_rem(divisor).is_some_and(|(_, r)| r.is_zero())
    }
}

impl fmt::Display for Poly {
    /// Ascending powers: `1 - z^2 + z^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}z")?,
                _ => write!(f, "{coeff}z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Memoised cyclotomic polynomials.
#[derive(Default, Debug)]
pub struct Cyclotomics {
    cache: HashMap<u64, Poly>,
}

impl Cyclotomics {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Φ_d`, as `(z^d - 1)` divided by `Φ_e` for every proper divisor `e`.
    /// Panics if `d == 0`.
    pub fn get(&mut self, d: u64) -> &Poly {
        assert!(d >= 1, "cyclotomic index must be positive");
        if !self.cache.contains_key(&d) {
            let mut p = Poly::x_pow_minus_one(d as usize);
            for e in divisors(d) {
                if e == d {
                    continue;
                }
                let phi_e = self.get(e).clone();
                let (q, r) = p.div_rem(&phi_e).expect("cyclotomics are monic");
                debug_assert!(r.is_zero());
                p = q;
            }
            self.cache.insert(d, p);
        }
        &self.cache[&d]
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorisation as `(p, exponent)` pairs in increasing order.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `Some(p)` when `n = p^α` with `α ≥ 1`.
pub(crate) fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    matches!(factorize(n).as_slice(), [(_, 1)])
}
