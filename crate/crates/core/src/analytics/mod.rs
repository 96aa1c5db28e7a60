//! Exact combinatorics and descriptive statistics.
//!
//! Counts are exact integers; probabilities are `f64` values taken from
//! exact ratios.

mod combos;
mod counting;
mod moments;
mod points;

use thiserror::Error;

pub use combos::{honor_combo_count, honor_combo_prob, strategy_combos, ComboSet, HonorCombo, REFERENCE_COMBO_PROBS};
pub use counting::{choose_exact, choose_u128, prob_safe_min_bid, ExactRatio};
pub use moments::{moments, MomentSummary};
pub use points::{bucket_probs, expected_dummy_points, point_distribution, PointDistribution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("choose({n}, {k}) is undefined: k > n")]
    ChooseRange { n: u64, k: u64 },
    #[error("combo {0} needs more than 13 cards")]
    OverConstrained(String),
    #[error("combo {0} asks for more than four cards of a rank")]
    RankOverflow(String),
    #[error("bad combo text {0:?}")]
    BadCombo(String),
    #[error("moments need at least one sample")]
    NoSamples,
    #[error("thresholds must be strictly increasing")]
    Thresholds,
}
