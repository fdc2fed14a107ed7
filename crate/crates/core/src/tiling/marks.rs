use std::collections::HashSet;

use crate::group::{BallIndex, Element, Word};

/// A set of group elements: a bitmap over a ball plus a hash set for
/// anything that falls outside it.
#[derive(Debug, Clone)]
pub struct MarkSet {
    index: BallIndex,
    bits: Vec<u64>,
    outside: HashSet<Element>,
    count: usize,
}

impl MarkSet {
    pub fn new(index: BallIndex) -> Self {
        let words = index.len().div_ceil(64);
        MarkSet { index, bits: vec![0; words], outside: HashSet::new(), count: 0 }
    }

    pub fn ball(&self) -> &BallIndex {
        &self.index
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Marks ball position `i`; returns false if it was already marked.
    pub fn insert_index(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        if self.bits[w] >> b & 1 == 1 {
            return false;
        }
        self.bits[w] |= 1 << b;
        self.count += 1;
        true
    }

    pub fn contains(&self, g: &Element) -> bool {
        match self.index.index_of(g) {
            Some(i) => self.contains_index(i),
            None => self.outside.contains(g),
        }
    }

    pub fn insert(&mut self, g: &Element) -> bool {
        match self.index.index_of(g) {
            Some(i) => self.insert_index(i),
            None => {
                let fresh = self.outside.insert(g.clone());
                self.count += usize::from(fresh);
                fresh
            }
        }
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        match self.index.index_of_word(w) {
            Some(i) => self.contains_index(i),
            None => self.outside.contains(&Element::Word(w.clone())),
        }
    }

    pub fn insert_word(&mut self, w: &Word) -> bool {
        match self.index.index_of_word(w) {
            Some(i) => self.insert_index(i),
            None => self.insert(&Element::Word(w.clone())),
        }
    }

    /// Number of marked positions among the first `n` ball positions.
    pub fn count_prefix(&self, n: usize) -> usize {
        let full = n / 64;
        let mut total: usize = self.bits[..full].iter().map(|w| w.count_ones() as usize).sum();
        if !n.is_multiple_of(64) {
            total += (self.bits[full] & ((1u64 << (n % 64)) - 1)).count_ones() as usize;
        }
        total
    }
}
