//! The manual policy used in practice and the variant that lets sprayers wait.

use crate::construct::tsp_route;
use crate::error::Result;
use crate::matheuristic::{solve, SolveOutcome, SolverConfig};
use crate::model::{Instance, Scored};
use crate::schedule::practice_eval;

/// One tour over all nodes dealt round-robin to the sprayers, 10% above
/// minimum quantity, refill when the next node cannot be covered. Delays
/// the policy cannot absorb are left standing and reported in the status.
pub fn practice_policy(instance: &Instance) -> Result<Scored> {
    let all: Vec<usize> = (1..=instance.num_nodes()).collect();
    let tour = tsp_route(instance, &all)?;
    let k = instance.num_sprayers();
    let mut routes = vec![Vec::new(); k];
    for (pos, &i) in tour.iter().enumerate() {
        routes[pos % k].push(i);
    }
    Ok(practice_eval(instance, &routes).into_scored())
}

/// The full pipeline with waiting free and allowed.
pub fn waiting_allowed_solve(instance: &Instance, config: &SolverConfig) -> Result<SolveOutcome> {
    let config = SolverConfig {
        allow_waiting: true,
        ..config.clone()
    };
    solve(instance, &config)
}
