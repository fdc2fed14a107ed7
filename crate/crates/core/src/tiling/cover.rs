//! Exact cover with primary and secondary items (Knuth's Algorithm X over
//! dancing links).
//!
//! Primary items must be covered exactly once, secondary items at most once.
//! Branching picks the primary item with the fewest remaining options, ties
//! going to the lowest item number.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    /// Indices of the chosen options.
    Found(Vec<usize>),
    /// The whole search tree was explored without a solution.
    Exhausted,
    /// Gave up after the node budget.
    BudgetExceeded,
}

#[derive(Debug, Clone)]
pub struct ExactCover {
    primary: usize,
    // Node 0 is the root, 1..=items are headers, the rest option nodes.
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    item: Vec<usize>,
    option: Vec<usize>,
    size: Vec<usize>,
    options: usize,
}

impl ExactCover {
    /// Items `0..primary` are primary, `primary..primary+secondary` secondary.
    pub fn new(primary: usize, secondary: usize) -> Self {
        let items = primary + secondary;
        let n = items + 1;
        let mut left = vec![0; n];
        let mut right = vec![0; n];
        for h in 0..n {
            // Secondary headers link to themselves, outside the root list.
            if h == 0 || h <= primary {
                left[h] = if h == 0 { primary } else { h - 1 };
                right[h] = if h == primary { 0 } else { h + 1 };
            } else {
                left[h] = h;
                right[h] = h;
            }
        }
        ExactCover {
            primary,
            left,
            right,
            up: (0..n).collect(),
            down: (0..n).collect(),
            item: (0..n).collect(),
            option: vec![usize::MAX; n],
            size: vec![0; n],
            options: 0,
        }
    }

    pub fn option_count(&self) -> usize {
        self.options
    }

    /// Adds an option covering the given (distinct) items; returns its index.
    pub fn add_option(&mut self, items: &[usize]) -> usize {
        let id = self.options;
        self.options += 1;
        let first = self.left.len();
        for (k, &it) in items.iter().enumerate() {
            let h = it + 1;
            let node = first + k;
            let above = self.up[h];
            self.up.push(above);
            self.down.push(h);
            self.down[above] = node;
            self.up[h] = node;
            self.item.push(h);
            self.option.push(id);
            self.size[h] += 1;
            self.left.push(if k == 0 { first + items.len() - 1 } else { node - 1 });
            self.right.push(if k + 1 == items.len() { first } else { node + 1 });
        }
        id
    }

    fn cover(&mut self, h: usize) {
        let (l, r) = (self.left[h], self.right[h]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[h];
        while i != h {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.item[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, h: usize) {
        let mut i = self.up[h];
        while i != h {
            let mut j = self.left[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                self.size[self.item[j]] += 1;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[h], self.right[h]);
        self.right[l] = h;
        self.left[r] = h;
    }

    /// Searches for one solution, visiting at most `budget` nodes.
    pub fn solve(&mut self, budget: u64) -> (CoverOutcome, u64) {
        let mut chosen = Vec::new();
        let mut nodes = 0u64;
        let outcome = match self.search(&mut chosen, &mut nodes, budget) {
            Some(true) => CoverOutcome::Found(chosen.iter().map(|&n| self.option[n]).collect()),
            Some(false) => CoverOutcome::Exhausted,
            None => CoverOutcome::BudgetExceeded,
        };
        (outcome, nodes)
    }

    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn search(&mut self, chosen: &mut Vec<usize>, nodes: &mut u64, budget: u64) -> Option<bool> {
        if *nodes >= budget {
            return None;
        }
        *nodes += 1;
        if self.right[0] == 0 {
            return Some(true);
        }
        let mut best = self.right[0];
        let mut h = self.right[best];
        while h != 0 {
            if self.size[h] < self.size[best] || (self.size[h] == self.size[best] && h < best) {
                best = h;
            }
            h = self.right[h];
        }
        if self.size[best] == 0 {
            return Some(false);
        }
        self.cover(best);
        let mut r = self.down[best];
        let mut result = Some(false);
        while r != best {
            chosen.push(r);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.item[j]);
                j = self.right[j];
            }
            let found = self.search(chosen, nodes, budget);
            if found == Some(true) {
                // Leave the structure as is; the caller only reads `chosen`.
                return Some(true);
            }
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.item[j]);
                j = self.left[j];
            }
            chosen.pop();
            if found.is_none() {
                result = None;
                break;
            }
            r = self.down[r];
        }
        self.uncover(best);
        debug_assert!(self.primary > 0);
        result
    }
}
