//! Brute-force oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use tilekit::group::{Letter, Word};

/// What an exhaustive scan of `B_radius` in `F_rank` sees of `M` and `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallScan {
    pub nodes: u64,
    pub m_witness: Option<Word>,
    pub s_elements: usize,
    /// Least distance `≤ 4r` between two distinct elements of `S` in the ball.
    pub s_min_distance: Option<usize>,
}

/// Visits every reduced word of length `≤ radius` and decides membership by
/// the length arithmetic itself: `|yξ| = |y| + |ξ| − 2c`, with `c` counted
/// letter by letter.
pub fn scan_ball(xi: &Word, r: usize, rank: u32, radius: usize) -> BallScan {
    let xi = xi.letters().to_vec();
    let mut st = State { xi, r, rank: rank as Letter, radius, buf: Vec::with_capacity(radius), nodes: 0, m: None, s: Vec::new() };
    st.visit();
    let bound = 4 * r;
    let mut best: Option<usize> = None;
    let s = &st.s;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let (y, z) = (&s[i], &s[j]);
            if y.len().abs_diff(z.len()) > bound {
                continue;
            }
            let common = y.iter().zip(z.iter()).take_while(|(a, b)| a == b).count();
            let d = y.len() + z.len() - 2 * common;
            if d <= bound && best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
    }
    BallScan { nodes: st.nodes, m_witness: st.m.map(Word::from_letters), s_elements: s.len(), s_min_distance: best }
}

struct State {
    xi: Vec<Letter>,
    r: usize,
    rank: Letter,
    radius: usize,
    buf: Vec<Letter>,
    nodes: u64,
    m: Option<Vec<Letter>>,
    s: Vec<Vec<Letter>>,
}

impl State {
    fn visit(&mut self) {
        self.nodes += 1;
        let (n, l) = (self.buf.len(), self.xi.len());
        let c_plus = (0..n.min(l)).take_while(|&i| self.buf[n - 1 - i] == -self.xi[i]).count();
        let c_minus = (0..n.min(l)).take_while(|&i| self.buf[n - 1 - i] == self.xi[l - 1 - i]).count();
        // |y·ξ^{±1}| < |y| + r  ⟺  |ξ| − 2c < r
        let plus = (l as i64 - 2 * c_plus as i64) < self.r as i64;
        let minus = (l as i64 - 2 * c_minus as i64) < self.r as i64;
        if plus && minus && self.m.is_none() {
            self.m = Some(self.buf.clone());
        }
        if plus || minus {
            self.s.push(self.buf.clone());
        }
        if n == self.radius {
            return;
        }
        for g in 1..=self.rank {
            for x in [g, -g] {
                if self.buf.last() == Some(&-x) {
                    continue;
                }
                self.buf.push(x);
                self.visit();
                self.buf.pop();
            }
        }
    }
}

/// `⌊(|ξ| − r)/2⌋ + 1 + 4r`: a witness of `M ≠ ∅` or of non-separation, if
/// any exists, can be shortened into this ball (shorten the common prefix
/// of the two elements down to what their membership suffixes need).
pub fn witness_radius(xi_len: usize, r: usize) -> usize {
    (xi_len - r) / 2 + 1 + 4 * r
}
