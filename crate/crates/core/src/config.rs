//! Resource limits shared by every search and enumeration.

use serde::{Deserialize, Serialize};

pub const ELEMENT_CAP_VAR: &str = "TILEKIT_ELEMENT_CAP";
pub const NODE_BUDGET_VAR: &str = "TILEKIT_NODE_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest ball any operation may enumerate or index.
    pub element_cap: u64,
    /// Search nodes before a backtracking search gives up.
    pub node_budget: u64,
    /// Bound on `2^diam(A)` (window states, and hence periods) when deciding
    /// tiles of `Z`.
    pub period_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { element_cap: 100_000_000, node_budget: 10_000_000, period_cap: 1 << 24 }
    }
}

impl Limits {
    /// Defaults overridden by `TILEKIT_ELEMENT_CAP` / `TILEKIT_NODE_BUDGET`.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = read_var(ELEMENT_CAP_VAR) {
            limits.element_cap = cap;
        }
        if let Some(budget) = read_var(NODE_BUDGET_VAR) {
            limits.node_budget = budget;
        }
        limits
    }
}

fn read_var(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.trim().parse().ok()
}
