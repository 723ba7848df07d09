use serde::{Deserialize, Serialize};

use super::pool::ArcPool;
use crate::insertion::{insert_all, Rule};
use crate::model::Instance;
use crate::schedule::{AlphaConfig, EvalOptions, EvalResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepairOp {
    Greedy,
    Regret,
}

/// Reinserts `removed` into `routes`. With a pool, a node may only go
/// between two pool-adjacent neighbours unless it has no such position.
pub fn repair(
    instance: &Instance,
    op: RepairOp,
    routes: Vec<Vec<usize>>,
    removed: Vec<usize>,
    alpha: &AlphaConfig,
    opts: EvalOptions,
    pool: Option<&ArcPool>,
) -> (Vec<Vec<usize>>, EvalResult) {
    let rule = match op {
        RepairOp::Greedy => Rule::Greedy,
        RepairOp::Regret => Rule::Regret2,
    };
    let gate =
        pool.map(|p| move |a: usize, v: usize, b: usize| p.contains(a, v) && p.contains(v, b));
    match &gate {
        Some(g) => insert_all(instance, routes, removed, rule, alpha, opts, Some(g)),
        None => insert_all(instance, routes, removed, rule, alpha, opts, None),
    }
}
