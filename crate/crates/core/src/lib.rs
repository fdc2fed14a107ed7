//! Tilings of finitely generated groups by finite sets.
//!
//! * [`group`]: exact arithmetic, word metric and balls for `F_k`, `Z^d`, `Z`, `Z_n`.
//! * [`tiling`]: tiles, truncated tilings, sound refutation by exact cover,
//!   the decision procedure for `Z` and the classical tile families.
//! * [`ztile`]: mask polynomials, cyclotomic divisors, Newman's prime-size
//!   criterion and the Coven–Meyerowitz conditions.
//! * [`bigtile`]: the construction extending a finite `K ⊂ F_k` to a tile
//!   `K ∪ {ξ}`, with exact certificate checks and a verifiable truncation.

pub mod bigtile;
pub mod config;
pub mod group;
pub mod tiling;
pub mod ztile;

pub use config::Limits;
pub use group::{Element, GroupError, GroupSpec, Word};
