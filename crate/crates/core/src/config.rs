//! Named constants for the lemma pipelines.
//!
//! Bounds stated only up to implicit constants become these parameters.
//! Theorem-exact postconditions never depend on them.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Constants {
    /// Size constant in the BSG output bounds.
    pub c1: f64,
    /// Sumset constant in the BSG output bound.
    pub c2: f64,
    /// Constant in the combination, technical and main-lemma budgets.
    pub c: f64,
    /// Constant in the partition branch-count budgets.
    pub big_c: f64,
    /// Turn every reported check into an assertion.
    pub strict: bool,
    /// Largest set for which Plünnecke minimizers are found exhaustively.
    pub exact_limit: usize,
    /// Seed for the randomized BSG pivot choice.
    pub seed: u64,
    /// Number of BSG pivots tried.
    pub bsg_trials: usize,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            c1: 1.0 / 16.0,
            c2: 65536.0,
            c: 1.0,
            big_c: 4.0,
            strict: false,
            exact_limit: 16,
            seed: 0,
            bsg_trials: 8,
        }
    }
}
