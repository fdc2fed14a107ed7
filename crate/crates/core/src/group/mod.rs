//! Exact arithmetic, word metric and ball enumeration for the supported
//! groups: free groups `F_k`, free abelian groups `Z^d`, the integers and
//! finite cyclic groups `Z_n`, each with its standard generating set.

mod ball;
mod word;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub use ball::{ball, ball_size, BallIndex, FreeBallIter};
pub use word::{letter_from_ordinal, letter_ordinal, Letter, Word, MAX_FREE_RANK};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    InvalidSpec(String),
    #[error("element {element} does not belong to {spec}")]
    KindMismatch { spec: String, element: String },
    #[error("operation requires a free group, got {0}")]
    NotFree(String),
    #[error("ball of radius {radius} has {size} elements, above the cap of {cap}")]
    CapExceeded { radius: u32, size: u128, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Which concrete group, with its standard generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawSpec")]
pub enum GroupSpec {
    Free { rank: u32 },
    FreeAbelian { rank: u32 },
    Integers,
    Cyclic { modulus: u64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawSpec {
    Free { rank: u32 },
    FreeAbelian { rank: u32 },
    Integers,
    Cyclic { modulus: u64 },
}

impl TryFrom<RawSpec> for GroupSpec {
    type Error = GroupError;

    fn try_from(raw: RawSpec) -> Result<Self, GroupError> {
        match raw {
            RawSpec::Free { rank } => GroupSpec::free(rank),
            RawSpec::FreeAbelian { rank } => GroupSpec::free_abelian(rank),
            RawSpec::Integers => Ok(GroupSpec::Integers),
            RawSpec::Cyclic { modulus } => GroupSpec::cyclic(modulus),
        }
    }
}

/// A group element in canonical normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Word(Word),
    Vector(Vec<i64>),
    Integer(i64),
    Residue(u64),
}

impl Element {
    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Element::Word(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Word(w) if w.is_empty() => write!(f, "ε"),
            Element::Word(w) => write!(f, "{w}"),
            Element::Vector(v) => write!(f, "{v:?}"),
            Element::Integer(x) => write!(f, "{x}"),
            Element::Residue(x) => write!(f, "{x}"),
        }
    }
}

impl From<Word> for Element {
    fn from(w: Word) -> Self {
        Element::Word(w)
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Element::Word(w) => s.serialize_str(&w.to_string()),
            Element::Vector(v) => v.serialize(s),
            Element::Integer(x) => s.serialize_i64(*x),
            Element::Residue(x) => s.serialize_u64(*x),
        }
    }
}

impl GroupSpec {
    pub fn free(rank: u32) -> Result<Self, GroupError> {
        if rank == 0 || rank > MAX_FREE_RANK {
            return Err(GroupError::InvalidSpec(format!(
                "free rank must be in 1..={MAX_FREE_RANK}, got {rank}"
            )));
        }
        Ok(GroupSpec::Free { rank })
    }

    pub fn free_abelian(rank: u32) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidSpec("free abelian rank must be positive".into()));
        }
        Ok(GroupSpec::FreeAbelian { rank })
    }

    pub fn cyclic(modulus: u64) -> Result<Self, GroupError> {
        if modulus < 2 {
            return Err(GroupError::InvalidSpec(format!("cyclic modulus must be ≥ 2, got {modulus}")));
        }
        Ok(GroupSpec::Cyclic { modulus })
    }

    pub fn is_free(&self) -> bool {
        matches!(self, GroupSpec::Free { .. })
    }

    pub(crate) fn require_free(&self) -> Result<u32, GroupError> {
        match *self {
            GroupSpec::Free { rank } => Ok(rank),
            _ => Err(GroupError::NotFree(self.to_string())),
        }
    }

    pub fn identity(&self) -> Element {
        match *self {
            GroupSpec::Free { .. } => Element::Word(Word::identity()),
            GroupSpec::FreeAbelian { rank } => Element::Vector(vec![0; rank as usize]),
            GroupSpec::Integers => Element::Integer(0),
            GroupSpec::Cyclic { .. } => Element::Residue(0),
        }
    }

    /// The standard generators (without inverses), in ball order.
    pub fn generators(&self) -> Vec<Element> {
        match *self {
            GroupSpec::Free { rank } => (1..=rank).map(|i| Element::Word(Word::generator(i))).collect(),
            GroupSpec::FreeAbelian { rank } => (0..rank as usize)
                .map(|i| {
                    let mut v = vec![0; rank as usize];
                    v[i] = 1;
                    Element::Vector(v)
                })
                .collect(),
            GroupSpec::Integers => vec![Element::Integer(1)],
            GroupSpec::Cyclic { .. } => vec![Element::Residue(1)],
        }
    }

    /// Checks that `g` is a valid normal form for this group.
    pub fn check(&self, g: &Element) -> Result<(), GroupError> {
        let ok = match (self, g) {
            (GroupSpec::Free { rank }, Element::Word(w)) => w.max_generator() <= *rank,
            (GroupSpec::FreeAbelian { rank }, Element::Vector(v)) => v.len() == *rank as usize,
            (GroupSpec::Integers, Element::Integer(_)) => true,
            (GroupSpec::Cyclic { modulus }, Element::Residue(x)) => x < modulus,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(g))
        }
    }

    fn mismatch(&self, g: &Element) -> GroupError {
        GroupError::KindMismatch { spec: self.to_string(), element: g.to_string() }
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Result<Element, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (self, g, h) {
            (GroupSpec::Free { .. }, Element::Word(x), Element::Word(y)) => Element::Word(x.mul(y)),
            (GroupSpec::FreeAbelian { .. }, Element::Vector(x), Element::Vector(y)) => {
                Element::Vector(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            (GroupSpec::Integers, Element::Integer(x), Element::Integer(y)) => Element::Integer(x + y),
            (GroupSpec::Cyclic { modulus }, Element::Residue(x), Element::Residue(y)) => {
                Element::Residue(((*x as u128 + *y as u128) % *modulus as u128) as u64)
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn inverse(&self, g: &Element) -> Result<Element, GroupError> {
        self.check(g)?;
        Ok(match (self, g) {
            (_, Element::Word(w)) => Element::Word(w.inverse()),
            (_, Element::Vector(v)) => Element::Vector(v.iter().map(|x| -x).collect()),
            (_, Element::Integer(x)) => Element::Integer(-x),
            (GroupSpec::Cyclic { modulus }, Element::Residue(x)) => Element::Residue((modulus - x) % modulus),
            _ => unreachable!("checked above"),
        })
    }

    /// Word length with respect to the standard generating set.
    pub fn length(&self, g: &Element) -> Result<u64, GroupError> {
        self.check(g)?;
        Ok(self.length_unchecked(g))
    }

    pub(crate) fn length_unchecked(&self, g: &Element) -> u64 {
        match (self, g) {
            (_, Element::Word(w)) => w.len() as u64,
            (_, Element::Vector(v)) => v.iter().map(|x| x.unsigned_abs()).sum(),
            (_, Element::Integer(x)) => x.unsigned_abs(),
            (GroupSpec::Cyclic { modulus }, Element::Residue(x)) => (*x).min(modulus - x),
            _ => unreachable!("length of mismatched element"),
        }
    }

    /// Left-invariant word metric `d(g, h) = |g⁻¹h|`.
    pub fn distance(&self, g: &Element, h: &Element) -> Result<u64, GroupError> {
        let gi = self.inverse(g)?;
        let p = self.multiply(&gi, h)?;
        Ok(self.length_unchecked(&p))
    }

    /// Total order used for balls: by length, then by normal form.
    pub fn compare(&self, g: &Element, h: &Element) -> Ordering {
        self.length_unchecked(g).cmp(&self.length_unchecked(h)).then_with(|| match (g, h) {
            (Element::Word(x), Element::Word(y)) => x.cmp_same_length(y),
            (Element::Vector(x), Element::Vector(y)) => x.cmp(y),
            (Element::Integer(x), Element::Integer(y)) => x.cmp(y),
            (Element::Residue(x), Element::Residue(y)) => x.cmp(y),
            _ => Ordering::Equal,
        })
    }

    /// Order of `g`: `None` for infinite order.
    pub fn order(&self, g: &Element) -> Result<Option<u64>, GroupError> {
        self.check(g)?;
        Ok(match (self, g) {
            (GroupSpec::Cyclic { modulus }, Element::Residue(x)) => {
                Some(modulus / num_integer::gcd(*x, *modulus))
            }
            _ if *g == self.identity() => Some(1),
            _ => None,
        })
    }

    /// Cancellation `c` with `|xy| = |x| + |y| - 2c` (free groups only).
    pub fn cancellation(&self, x: &Element, y: &Element) -> Result<u64, GroupError> {
        self.require_free()?;
        self.check(x)?;
        self.check(y)?;
        let (Element::Word(x), Element::Word(y)) = (x, y) else { unreachable!() };
        Ok(x.cancellation(y) as u64)
    }

    /// Centre of the tripod spanned by three points of the Cayley tree: the
    /// unique vertex lying on all three pairwise geodesics.
    pub fn tripod_center(&self, p0: &Element, p1: &Element, p2: &Element) -> Result<Element, GroupError> {
        self.require_free()?;
        for p in [p0, p1, p2] {
            self.check(p)?;
        }
        let (Element::Word(a), Element::Word(b), Element::Word(c)) = (p0, p1, p2) else { unreachable!() };
        let ai = a.inverse();
        let q1 = ai.mul(b);
        let q2 = ai.mul(c);
        Ok(Element::Word(a.mul(&q1.common_prefix(&q2))))
    }

    /// Parses an element from its JSON form (`"abA"`, `[1,-2]`, `5`).
    pub fn element_from_json(&self, value: &Value) -> Result<Element, GroupError> {
        let bad = || GroupError::Parse(format!("{value} is not an element of {self}"));
        let elem = match self {
            GroupSpec::Free { rank } => Element::Word(Word::parse(value.as_str().ok_or_else(bad)?, *rank)?),
            GroupSpec::FreeAbelian { .. } => Element::Vector(
                value
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(bad))
                    .collect::<Result<_, _>>()?,
            ),
            GroupSpec::Integers => Element::Integer(value.as_i64().ok_or_else(bad)?),
            GroupSpec::Cyclic { .. } => Element::Residue(value.as_u64().ok_or_else(bad)?),
        };
        self.check(&elem)?;
        Ok(elem)
    }

    /// Parses a bare element literal: a free word (`abA`, empty for ε) or JSON.
    pub fn parse_element(&self, text: &str) -> Result<Element, GroupError> {
        match self {
            GroupSpec::Free { rank } => {
                let t = text.trim();
                let t = t.strip_prefix('"').and_then(|t| t.strip_suffix('"')).unwrap_or(t);
                Ok(Element::Word(Word::parse(t, *rank)?))
            }
            _ => {
                let v: Value = serde_json::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))?;
                self.element_from_json(&v)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Free { rank } => write!(f, "free:{rank}"),
            GroupSpec::FreeAbelian { rank } => write!(f, "abelian:{rank}"),
            GroupSpec::Integers => write!(f, "z"),
            GroupSpec::Cyclic { modulus } => write!(f, "cyclic:{modulus}"),
        }
    }
}

/// Short form used on the command line: `free:2`, `abelian:3`, `z`, `cyclic:6`.
impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let arg = parts.next();
        if parts.next().is_some() {
            return Err(GroupError::Parse(format!("unrecognised group {s:?}")));
        }
        let num = |a: Option<&str>| -> Result<u64, GroupError> {
            a.ok_or_else(|| GroupError::Parse(format!("group {s:?} needs a parameter")))?
                .parse()
                .map_err(|_| GroupError::Parse(format!("bad parameter in {s:?}")))
        };
        match kind {
            "free" => GroupSpec::free(num(arg)? as u32),
            "abelian" | "free_abelian" | "zd" => GroupSpec::free_abelian(num(arg)? as u32),
            "z" | "integers" if arg.is_none() => Ok(GroupSpec::Integers),
            "cyclic" | "zn" => GroupSpec::cyclic(num(arg)?),
            _ => Err(GroupError::Parse(format!("unrecognised group {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> GroupSpec {
        GroupSpec::free(2).unwrap()
    }

    fn w(s: &str) -> Element {
        f2().parse_element(s).unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(f2().multiply(&w("aB"), &w("ba")).unwrap(), w("aa"));
        let z = GroupSpec::Integers;
        assert_eq!(z.multiply(&Element::Integer(3), &Element::Integer(4)).unwrap(), Element::Integer(7));
        let z4 = GroupSpec::cyclic(4).unwrap();
        assert_eq!(z4.multiply(&Element::Residue(3), &Element::Residue(2)).unwrap(), Element::Residue(1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(f2().inverse(&w("ab")).unwrap(), w("BA"));
        assert_eq!(GroupSpec::Integers.inverse(&Element::Integer(5)).unwrap(), Element::Integer(-5));
        let z6 = GroupSpec::cyclic(6).unwrap();
        assert_eq!(z6.inverse(&Element::Residue(2)).unwrap(), Element::Residue(4));
        assert_eq!(z6.inverse(&Element::Residue(0)).unwrap(), Element::Residue(0));
    }

    #[test]
    fn length_and_distance_examples() {
        assert_eq!(f2().length(&w("aBa")).unwrap(), 3);
        let z2 = GroupSpec::free_abelian(2).unwrap();
        assert_eq!(z2.length(&Element::Vector(vec![2, -3])).unwrap(), 5);
        let z6 = GroupSpec::cyclic(6).unwrap();
        assert_eq!(z6.length(&Element::Residue(4)).unwrap(), 2);
        assert_eq!(f2().distance(&w("a"), &w("b")).unwrap(), 2);
        assert_eq!(f2().distance(&w("ab"), &w("ab")).unwrap(), 0);
        let z = GroupSpec::Integers;
        assert_eq!(z.distance(&Element::Integer(3), &Element::Integer(-1)).unwrap(), 4);
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let z = GroupSpec::Integers;
        assert!(matches!(
            z.multiply(&Element::Integer(1), &w("a")),
            Err(GroupError::KindMismatch { .. })
        ));
        assert!(f2().check(&GroupSpec::free(3).unwrap().parse_element("c").unwrap()).is_err());
        assert!(GroupSpec::cyclic(4).unwrap().check(&Element::Residue(4)).is_err());
    }

    #[test]
    fn cancellation_requires_free() {
        assert_eq!(f2().cancellation(&w("abA"), &w("abb")).unwrap(), 1);
        assert_eq!(f2().cancellation(&w("ab"), &w("BA")).unwrap(), 2);
        assert_eq!(f2().cancellation(&w("a"), &w("b")).unwrap(), 0);
        let z = GroupSpec::Integers;
        assert!(matches!(
            z.cancellation(&Element::Integer(1), &Element::Integer(2)),
            Err(GroupError::NotFree(_))
        ));
    }

    #[test]
    fn tripod_examples() {
        let g = f2();
        assert_eq!(g.tripod_center(&w(""), &w("aa"), &w("ab")).unwrap(), w("a"));
        assert_eq!(g.tripod_center(&w(""), &w("a"), &w("a")).unwrap(), w("a"));
        assert_eq!(g.tripod_center(&w(""), &w("ab"), &w("Ba")).unwrap(), w(""));
    }

    #[test]
    fn spec_parsing_and_validation() {
        assert_eq!("free:2".parse::<GroupSpec>().unwrap(), f2());
        assert_eq!("z".parse::<GroupSpec>().unwrap(), GroupSpec::Integers);
        assert_eq!("cyclic:6".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic { modulus: 6 });
        assert!("cyclic:1".parse::<GroupSpec>().is_err());
        assert!("free:0".parse::<GroupSpec>().is_err());
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"free","rank":2}"#).unwrap();
        assert_eq!(spec, f2());
        assert!(serde_json::from_str::<GroupSpec>(r#"{"kind":"cyclic","modulus":1}"#).is_err());
        assert_eq!(
            serde_json::to_string(&GroupSpec::free_abelian(3).unwrap()).unwrap(),
            r#"{"kind":"free_abelian","rank":3}"#
        );
    }

    #[test]
    fn orders() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        assert_eq!(z4.order(&Element::Residue(1)).unwrap(), Some(4));
        assert_eq!(z4.order(&Element::Residue(2)).unwrap(), Some(2));
        assert_eq!(f2().order(&w("ab")).unwrap(), None);
        assert_eq!(f2().order(&w("")).unwrap(), Some(1));
    }
}
