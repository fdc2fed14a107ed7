use std::collections::HashMap;

use super::word::{letter_from_ordinal, letter_ordinal, Letter, Word};
use super::{Element, GroupError, GroupSpec};

/// Number of elements of length `≤ radius`, saturating at `u128::MAX`.
pub fn ball_size(spec: &GroupSpec, radius: u32) -> u128 {
    let r = radius as u128;
    match *spec {
        GroupSpec::Free { rank } => {
            let k = rank as u128;
            // 1 + 2k + 2k(2k-1) + ... + 2k(2k-1)^(R-1)
            let mut total: u128 = 1;
            let mut sphere: u128 = 2 * k;
            for _ in 0..radius {
                total = total.saturating_add(sphere);
                sphere = sphere.saturating_mul(2 * k - 1);
            }
            total
        }
        GroupSpec::FreeAbelian { rank } => {
            // Σ_i 2^i C(d,i) C(R,i)
            let d = rank as u128;
            let mut total: u128 = 0;
            let mut c_d: u128 = 1;
            let mut c_r: u128 = 1;
            let mut pow2: u128 = 1;
            for i in 0..=d.min(r) {
                total = total.saturating_add(pow2.saturating_mul(c_d).saturating_mul(c_r));
                c_d = c_d.saturating_mul(d - i) / (i + 1);
                c_r = c_r.saturating_mul(r - i) / (i + 1);
                pow2 = pow2.saturating_mul(2);
            }
            total
        }
        GroupSpec::Integers => 2 * r + 1,
        GroupSpec::Cyclic { modulus } => (2 * r + 1).min(modulus as u128),
    }
}

fn check_cap(spec: &GroupSpec, radius: u32, cap: u64) -> Result<usize, GroupError> {
    let size = ball_size(spec, radius);
    if size > cap as u128 {
        return Err(GroupError::CapExceeded { radius, size, cap });
    }
    Ok(size as usize)
}

/// All elements of length `≤ radius`, sorted by length and then by normal
/// form. Refuses balls larger than `cap`.
pub fn ball(spec: &GroupSpec, radius: u32, cap: u64) -> Result<Vec<Element>, GroupError> {
    let size = check_cap(spec, radius, cap)?;
    let mut out = Vec::with_capacity(size);
    match *spec {
        GroupSpec::Free { rank } => out.extend(FreeBallIter::new(rank, radius).map(Element::Word)),
        GroupSpec::FreeAbelian { rank } => {
            let mut vs = Vec::with_capacity(size);
            lattice_points(rank as usize, radius as i64, &mut Vec::new(), &mut vs);
            vs.sort_by(|a: &Vec<i64>, b| {
                let la: i64 = a.iter().map(|x| x.abs()).sum();
                let lb: i64 = b.iter().map(|x| x.abs()).sum();
                la.cmp(&lb).then_with(|| a.cmp(b))
            });
            out.extend(vs.into_iter().map(Element::Vector));
        }
        GroupSpec::Integers => {
            out.push(Element::Integer(0));
            for x in 1..=radius as i64 {
                out.push(Element::Integer(-x));
                out.push(Element::Integer(x));
            }
        }
        GroupSpec::Cyclic { modulus } => {
            let mut rs: Vec<u64> = (0..modulus).filter(|&x| x.min(modulus - x) <= radius as u64).collect();
            rs.sort_by_key(|&x| (x.min(modulus - x), x));
            out.extend(rs.into_iter().map(Element::Residue));
        }
    }
    debug_assert_eq!(out.len(), size);
    Ok(out)
}

fn lattice_points(d: usize, budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() == d {
        out.push(prefix.clone());
        return;
    }
    for x in -budget..=budget {
        prefix.push(x);
        lattice_points(d, budget - x.abs(), prefix, out);
        prefix.pop();
    }
}

/// Reduced words of `F_k` of length `≤ radius` in shortlex order, produced
/// level by level by extending reduced words (nothing is generated and then
/// reduced).
pub struct FreeBallIter {
    rank: u32,
    radius: usize,
    current: Option<Vec<Letter>>,
}

impl FreeBallIter {
    pub fn new(rank: u32, radius: u32) -> Self {
        FreeBallIter { rank, radius: radius as usize, current: Some(Vec::new()) }
    }

    /// Words of length exactly `radius`, in ball order.
    pub fn sphere(rank: u32, radius: u32) -> Self {
        let mut it = FreeBallIter { rank, radius: radius as usize, current: None };
        let mut first = Vec::with_capacity(radius as usize);
        for _ in 0..radius {
            let x = it.next_allowed(first.last().copied(), 0).expect("rank ≥ 1");
            first.push(x);
        }
        it.current = Some(first);
        it
    }

    /// Smallest letter with ordinal `≥ from` that may follow `prev`.
    fn next_allowed(&self, prev: Option<Letter>, from: usize) -> Option<Letter> {
        (from..2 * self.rank as usize)
            .map(letter_from_ordinal)
            .find(|&x| prev.is_none_or(|p| p != -x))
    }

    fn advance(&self, w: &mut Vec<Letter>) -> bool {
        // Increment the rightmost position that can still grow, then refill.
        let n = w.len();
        for i in (0..n).rev() {
            let prev = if i == 0 { None } else { Some(w[i - 1]) };
            if let Some(x) = self.next_allowed(prev, letter_ordinal(w[i]) + 1) {
                w[i] = x;
                for j in i + 1..n {
                    w[j] = self.next_allowed(Some(w[j - 1]), 0).expect("rank ≥ 1");
                }
                return true;
            }
        }
        if n >= self.radius {
            return false;
        }
        w.clear();
        let mut prev = None;
        for _ in 0..=n {
            let x = self.next_allowed(prev, 0).expect("rank ≥ 1");
            w.push(x);
            prev = Some(x);
        }
        true
    }
}

impl Iterator for FreeBallIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let mut cur = self.current.take()?;
        let out = Word::from_reduced_unchecked(cur.clone());
        if self.advance(&mut cur) {
            self.current = Some(cur);
        }
        Some(out)
    }
}

/// Bijection between a ball and `0..len`, following ball order.
///
/// Free groups use a closed-form shortlex rank, so huge balls can be
/// indexed without materialising them.
#[derive(Debug, Clone)]
pub struct BallIndex {
    spec: GroupSpec,
    radius: u32,
    len: usize,
    repr: IndexRepr,
}

#[derive(Debug, Clone)]
enum IndexRepr {
    Free { rank: u32, offsets: Vec<u64>, powers: Vec<u64> },
    Integers,
    Table { elements: Vec<Element>, positions: HashMap<Element, usize> },
}

impl BallIndex {
    pub fn new(spec: &GroupSpec, radius: u32, cap: u64) -> Result<Self, GroupError> {
        let len = check_cap(spec, radius, cap)?;
        let repr = match *spec {
            GroupSpec::Free { rank } => {
                let base = 2 * rank as u64 - 1;
                let mut offsets = vec![0u64];
                let mut sphere = 1u64;
                for n in 0..=radius {
                    offsets.push(offsets[n as usize] + sphere);
                    sphere = if n == 0 { 2 * rank as u64 } else { sphere * base };
                }
                let powers = (0..=radius).scan(1u64, |p, _| {
                    let cur = *p;
                    *p = p.saturating_mul(base);
                    Some(cur)
                });
                IndexRepr::Free { rank, offsets, powers: powers.collect() }
            }
            GroupSpec::Integers => IndexRepr::Integers,
            _ => {
                let elements = ball(spec, radius, cap)?;
                let positions = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
                IndexRepr::Table { elements, positions }
            }
        };
        Ok(BallIndex { spec: *spec, radius, len, repr })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Position of a free word, or `None` outside the ball.
    pub fn index_of_word(&self, w: &Word) -> Option<usize> {
        let IndexRepr::Free { rank, offsets, powers } = &self.repr else {
            return None;
        };
        let n = w.len();
        if n > self.radius as usize {
            return None;
        }
        if n == 0 {
            return Some(0);
        }
        let letters = w.letters();
        let mut rank_in_sphere = letter_ordinal(letters[0]) as u64 * powers[n - 1];
        for i in 1..n {
            let ord = letter_ordinal(letters[i]);
            let banned = letter_ordinal(-letters[i - 1]);
            let digit = if ord > banned { ord - 1 } else { ord };
            rank_in_sphere += digit as u64 * powers[n - 1 - i];
        }
        debug_assert!(w.max_generator() <= *rank);
        Some((offsets[n] + rank_in_sphere) as usize)
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        match (&self.repr, g) {
            (IndexRepr::Free { .. }, Element::Word(w)) => self.index_of_word(w),
            (IndexRepr::Integers, Element::Integer(x)) => {
                if x.unsigned_abs() > self.radius as u64 {
                    None
                } else if *x <= 0 {
                    Some(2 * x.unsigned_abs() as usize - usize::from(*x < 0))
                } else {
                    Some(2 * *x as usize)
                }
            }
            (IndexRepr::Table { positions, .. }, g) => positions.get(g).copied(),
            _ => None,
        }
    }

    pub fn word_at(&self, i: usize) -> Word {
        let IndexRepr::Free { rank, offsets, powers } = &self.repr else {
            panic!("word_at on a non-free ball");
        };
        assert!(i < self.len, "index {i} outside ball of size {}", self.len);
        let i = i as u64;
        let n = offsets.partition_point(|&o| o <= i) - 1;
        if n == 0 {
            return Word::identity();
        }
        let mut r = i - offsets[n];
        let mut letters = Vec::with_capacity(n);
        let first = r / powers[n - 1];
        r %= powers[n - 1];
        letters.push(letter_from_ordinal(first as usize));
        for j in 1..n {
            let digit = (r / powers[n - 1 - j]) as usize;
            r %= powers[n - 1 - j];
            let banned = letter_ordinal(-letters[j - 1]);
            let ord = if digit >= banned { digit + 1 } else { digit };
            letters.push(letter_from_ordinal(ord));
        }
        debug_assert!(letters.iter().all(|x| x.unsigned_abs() as u32 <= *rank));
        Word::from_reduced_unchecked(letters)
    }

    pub fn element_at(&self, i: usize) -> Element {
        match &self.repr {
            IndexRepr::Free { .. } => Element::Word(self.word_at(i)),
            IndexRepr::Integers => {
                let m = i.div_ceil(2) as i64;
                Element::Integer(if i % 2 == 1 { -m } else { m })
            }
            IndexRepr::Table { elements, .. } => elements[i].clone(),
        }
    }
}
