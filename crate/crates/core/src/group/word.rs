//! Reduced words in a free group.
//!
//! A letter is a signed generator index: `+i` is `a_i`, `-i` is `a_i⁻¹`
//! (indices start at 1). Text syntax uses `a..z` for generators and
//! uppercase for inverses, so `"abA"` is `a·b·a⁻¹` and `""` is the identity.

use std::cmp::Ordering;
use std::fmt;

use super::GroupError;

/// Largest rank expressible in the text syntax.
pub const MAX_FREE_RANK: u32 = 26;

pub type Letter = i8;

/// Position of a letter in the fixed order `a_1 < a_1⁻¹ < a_2 < a_2⁻¹ < ...`.
#[inline]
pub fn letter_ordinal(x: Letter) -> usize {
    debug_assert!(x != 0);
    2 * (x.unsigned_abs() as usize - 1) + usize::from(x < 0)
}

/// Inverse of [`letter_ordinal`].
#[inline]
pub fn letter_from_ordinal(ord: usize) -> Letter {
    let gen = (ord / 2 + 1) as Letter;
    if ord.is_multiple_of(2) {
        gen
    } else {
        -gen
    }
}

/// A freely reduced word.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Single generator `a_i` (`i ≥ 1`).
    pub fn generator(i: u32) -> Self {
        Word(vec![i as Letter])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for x in letters {
            if x == 0 {
                continue;
            }
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    /// Wraps letters that are already known to be reduced.
    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        debug_assert!(!letters.contains(&0));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|x| x.unsigned_abs() as u32).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&x| -x).collect())
    }

    /// Length of the segment erased when concatenating `self` and `other`,
    /// so that `|self·other| = |self| + |other| - 2c`.
    pub fn cancellation(&self, other: &Word) -> usize {
        self.0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(&x, &y)| x == -y)
            .count()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let c = self.cancellation(other);
        let mut out = Vec::with_capacity(self.len() + other.len() - 2 * c);
        out.extend_from_slice(&self.0[..self.len() - c]);
        out.extend_from_slice(&other.0[c..]);
        Word(out)
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix(&self, n: usize) -> Word {
        Word(self.0[self.len() - n..].to_vec())
    }

    pub fn ends_with(&self, tail: &Word) -> bool {
        self.0.ends_with(&tail.0)
    }

    pub fn starts_with(&self, head: &Word) -> bool {
        self.0.starts_with(&head.0)
    }

    /// Cyclically reduced: first and last letters are not mutually inverse.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(x), Some(y)) => self.len() == 1 || x != -y,
            _ => true,
        }
    }

    /// Smallest `p ≥ 1` with `w[i] = w[i+p]` for every valid `i`.
    pub fn smallest_period(&self) -> usize {
        let w = &self.0;
        (1..=w.len())
            .find(|&p| (0..w.len() - p).all(|i| w[i] == w[i + p]))
            .unwrap_or(0)
    }

    /// Parses the text syntax, checking every generator is below `rank`.
    pub fn parse(text: &str, rank: u32) -> Result<Word, GroupError> {
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let x = match ch {
                'a'..='z' => (ch as u8 - b'a' + 1) as Letter,
                'A'..='Z' => -((ch as u8 - b'A' + 1) as Letter),
                _ => return Err(GroupError::Parse(format!("invalid letter {ch:?} in word {text:?}"))),
            };
            if x.unsigned_abs() as u32 > rank {
                return Err(GroupError::Parse(format!(
                    "letter {ch:?} exceeds rank {rank} in word {text:?}"
                )));
            }
            letters.push(x);
        }
        Ok(Word::from_letters(letters))
    }

    /// Order within one length: letter by letter, `a < A < b < B < ...`.
    pub fn cmp_same_length(&self, other: &Word) -> Ordering {
        for (&x, &y) in self.0.iter().zip(other.0.iter()) {
            match letter_ordinal(x).cmp(&letter_ordinal(y)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.len().cmp(&other.len())
    }

    /// Shortlex order: shorter first, then [`Word::cmp_same_length`].
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp_same_length(other))
    }

    /// Median of `ε`, `self`, `other` in the tree: their longest common prefix.
    pub fn common_prefix(&self, other: &Word) -> Word {
        let n = self.0.iter().zip(other.0.iter()).take_while(|(x, y)| x == y).count();
        self.prefix(n)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            let base = if x > 0 { b'a' } else { b'A' };
            let c = (base + x.unsigned_abs() - 1) as char;
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 26).unwrap()
    }

    #[test]
    fn parse_reduces_and_displays() {
        assert_eq!(w("abBa").to_string(), "aa");
        assert_eq!(w("").len(), 0);
        assert!(Word::parse("c", 2).is_err());
        assert!(Word::parse("a1", 2).is_err());
    }

    #[test]
    fn cancellation_examples() {
        assert_eq!(w("abA").cancellation(&w("abb")), 1);
        assert_eq!(w("ab").cancellation(&w("BA")), 2);
        assert_eq!(w("a").cancellation(&w("b")), 0);
    }

    #[test]
    fn periods() {
        assert_eq!(w("abab").smallest_period(), 2);
        assert_eq!(w("abaB").smallest_period(), 4);
        assert_eq!(w("aaa").smallest_period(), 1);
        assert_eq!(w("aba").smallest_period(), 2);
    }

    #[test]
    fn letter_order() {
        let mut ws = vec![w("b"), w("B"), w("A"), w("a")];
        ws.sort_by(|x, y| x.shortlex_cmp(y));
        assert_eq!(ws, vec![w("a"), w("A"), w("b"), w("B")]);
        for ord in 0..8 {
            assert_eq!(letter_ordinal(letter_from_ordinal(ord)), ord);
        }
    }
}
