use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intensify::SearchBudget;
use crate::schedule::AlphaConfig;

/// When the exact refill search runs on a new best solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalSearchStrategy {
    None,
    Kappa0,
    Kappa1,
    /// No search in the first third of the run, kappa 0 in the second,
    /// kappa 1 in the last.
    Hybrid,
}

impl LocalSearchStrategy {
    /// Neighbourhood size to use at `iter` out of `max_iter`, if any.
    pub fn kappa_at(self, iter: usize, max_iter: usize) -> Option<usize> {
        match self {
            LocalSearchStrategy::None => None,
            LocalSearchStrategy::Kappa0 => Some(0),
            LocalSearchStrategy::Kappa1 => Some(1),
            LocalSearchStrategy::Hybrid => {
                if 3 * iter < max_iter {
                    None
                } else if 3 * iter < 2 * max_iter {
                    Some(0)
                } else {
                    Some(1)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlnsConfig {
    /// Iterations; `None` means 200 per field node.
    pub max_iter: Option<usize>,
    pub segment_length: usize,
    /// Scores for new best, better than current, accepted, rejected.
    pub scores: [f64; 4],
    /// Weight smoothing mu.
    pub smoothing: f64,
    pub cooling: f64,
    /// Initial temperature is this factor times |f0|.
    pub temp_factor: f64,
    pub max_no_improve: usize,
    /// Removal share for random, worst-distance and historical removal.
    pub removal_random: (f64, f64),
    /// Removal share for longest distance-service removal.
    pub removal_longest: (f64, f64),
    /// Neighbourhood size of the kappa-neighbours removal.
    pub kappa_destroy: usize,
    pub seed: u64,
    pub local_search: LocalSearchStrategy,
    pub ls_budget: SearchBudget,
    pub alpha: AlphaConfig,
    pub allow_waiting: bool,
    /// Wall-clock cap; runs stop early when it passes, which makes them
    /// timing dependent.
    pub time_limit: Option<Duration>,
}

impl Default for AlnsConfig {
    fn default() -> Self {
        AlnsConfig {
            max_iter: None,
            segment_length: 200,
            scores: [7.0, 4.0, 2.0, 1.0],
            smoothing: 0.8,
            cooling: 0.995,
            temp_factor: 100.0,
            max_no_improve: 500,
            removal_random: (0.07, 0.15),
            removal_longest: (0.05, 0.12),
            kappa_destroy: 2,
            seed: 0,
            local_search: LocalSearchStrategy::Kappa1,
            ls_budget: SearchBudget::default(),
            alpha: AlphaConfig::default(),
            allow_waiting: false,
            time_limit: None,
        }
    }
}

impl AlnsConfig {
    pub fn iterations(&self, num_nodes: usize) -> usize {
        self.max_iter.unwrap_or(200 * num_nodes)
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.scores;
        if !(s[0] >= s[1] && s[1] >= s[2] && s[2] >= s[3] && s[3] > 0.0) {
            return Err(Error::InvalidInput(
                "scores must be non-increasing and positive".into(),
            ));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::InvalidInput(
                "cooling rate must lie in (0, 1)".into(),
            ));
        }
        if !(self.smoothing > 0.0 && self.smoothing < 1.0) {
            return Err(Error::InvalidInput("smoothing must lie in (0, 1)".into()));
        }
        if self.segment_length == 0 || self.max_no_improve == 0 {
            return Err(Error::InvalidInput(
                "segment length and stagnation limit must be positive".into(),
            ));
        }
        for (a, b) in [self.removal_random, self.removal_longest] {
            if !(0.0 < a && a <= b && b <= 1.0) {
                return Err(Error::InvalidInput(
                    "removal shares must satisfy 0 < lo <= hi <= 1".into(),
                ));
            }
        }
        Ok(())
    }
}
