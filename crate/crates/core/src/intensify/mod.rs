//! Exact re-optimization with routes fixed, and the arc-pool phase.

mod candidates;
mod local_search;
mod phase3;
mod service;

pub use candidates::{candidate_set, CandidateSet};
pub(crate) use local_search::optimize_refills;
pub use local_search::{local_search, local_search_with, LocalSearchOutcome, SearchBudget};
pub use phase3::{phase3_improve, Phase3Config, Phase3Outcome};
pub use service::{grid_service_oracle, optimize_service_times, optimize_service_times_with};
