use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::accept::{accept, initial_temperature, temperature};
use super::config::AlnsConfig;
use super::destroy::{DestroyOp, Destroyer};
use super::pool::ArcPool;
use super::repair::{repair, RepairOp};
use super::weights::{update_weights, OperatorStats};
use crate::intensify::local_search_with;
use crate::model::{Instance, Scored};
use crate::schedule::EvalOptions;

/// One line of the search trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iteration: usize,
    #[serde(rename = "operatorId")]
    pub operator_id: usize,
    #[serde(rename = "fNew")]
    pub f_new: f64,
    #[serde(rename = "fCurr")]
    pub f_curr: f64,
    #[serde(rename = "fBest")]
    pub f_best: f64,
    #[serde(rename = "Tem")]
    pub tem: f64,
    pub accepted: bool,
    pub feasible: bool,
}

#[derive(Debug, Clone)]
pub struct AlnsOutcome {
    pub best: Scored,
    pub pool: ArcPool,
    pub stats: OperatorStats,
    pub trace: Vec<TraceRow>,
}

/// Adaptive large neighbourhood search from `initial`.
pub fn run(instance: &Instance, initial: Scored, config: &AlnsConfig) -> AlnsOutcome {
    run_restricted(instance, initial, config, None)
}

/// As [`run`], optionally limiting insertions to pool arcs.
pub(crate) fn run_restricted(
    instance: &Instance,
    initial: Scored,
    config: &AlnsConfig,
    restrict: Option<&ArcPool>,
) -> AlnsOutcome {
    let max_iter = config.iterations(instance.num_nodes());
    let opts = EvalOptions {
        allow_waiting: config.allow_waiting,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut destroyer = Destroyer::new(instance, config);
    destroyer.observe(&initial.solution);
    let mut pool = ArcPool::from_solution(&initial.solution);
    let mut stats = OperatorStats::default();
    let mut segment: Vec<Option<f64>> = vec![None; DestroyOp::ALL.len()];
    let mut trace = Vec::with_capacity(max_iter);
    let tem0 = initial_temperature(initial.search_cost(), config.temp_factor);
    // New bests are judged on the constructive evaluation, the scale every
    // candidate is scored on; `best` keeps the intensified incumbent.
    let mut best_seen = initial.clone();
    let mut best = match config.local_search.kappa_at(0, max_iter) {
        Some(kappa) if max_iter > 0 => {
            let improved =
                local_search_with(instance, &initial, kappa, config.ls_budget, opts).scored;
            pool.record(&improved.solution);
            improved
        }
        _ => initial.clone(),
    };
    let mut current = initial;
    let mut no_improve = 0usize;
    let [phi1, phi2, phi3, phi4] = config.scores;

    let started = Instant::now();
    for iter in 0..max_iter {
        if config
            .time_limit
            .is_some_and(|limit| started.elapsed() > limit)
        {
            break;
        }
        let tem = temperature(tem0, config.cooling, iter);
        let op = roulette(&stats, &mut rng);
        let rop = if rng.random_bool(0.5) {
            RepairOp::Greedy
        } else {
            RepairOp::Regret
        };
        let removal = destroyer.destroy(op, &current.solution, &mut rng);
        let (_, eval) = repair(
            instance,
            rop,
            removal.routes,
            removal.removed,
            &config.alpha,
            opts,
            restrict,
        );
        let cand = eval.into_scored();
        destroyer.observe(&cand.solution);
        let f_new = cand.search_cost();
        let f_curr = current.search_cost();
        let feasible = cand.status.is_hard_feasible();
        let (phi, accepted) = if !feasible {
            no_improve += 1;
            (phi4, false)
        } else if f_new < best_seen.search_cost() - 1e-9 {
            no_improve = 0;
            let improved = match config.local_search.kappa_at(iter, max_iter) {
                Some(kappa) => {
                    local_search_with(instance, &cand, kappa, config.ls_budget, opts).scored
                }
                None => cand.clone(),
            };
            pool.record(&improved.solution);
            stats.ops[op.id() - 1].new_bests += 1;
            if improved.search_cost() < best.search_cost() {
                best = improved;
            }
            best_seen = cand.clone();
            current = cand;
            (phi1, true)
        } else {
            no_improve += 1;
            if f_new < f_curr {
                current = cand;
                (phi2, true)
            } else if accept(f_new, f_curr, tem, &mut rng) {
                current = cand;
                (phi3, true)
            } else {
                (phi4, false)
            }
        };
        let slot = &mut segment[op.id() - 1];
        *slot = Some(slot.map_or(phi, |s| s.max(phi)));
        stats.ops[op.id() - 1].uses += 1;
        trace.push(TraceRow {
            iteration: iter,
            operator_id: op.id(),
            f_new,
            f_curr,
            f_best: best.search_cost(),
            tem,
            accepted,
            feasible,
        });
        if (iter + 1) % config.segment_length == 0 {
            stats = update_weights(&stats, &segment, config.smoothing);
            segment.fill(None);
        }
        if no_improve >= config.max_no_improve {
            current = best_seen.clone();
            no_improve = 0;
        }
    }
    AlnsOutcome {
        best,
        pool,
        stats,
        trace,
    }
}

fn roulette<R: Rng + ?Sized>(stats: &OperatorStats, rng: &mut R) -> DestroyOp {
    let total: f64 = stats.ops.iter().map(|o| o.weight).sum();
    let mut u = rng.random::<f64>() * total;
    for (q, o) in stats.ops.iter().enumerate() {
        if u < o.weight {
            return DestroyOp::ALL[q];
        }
        u -= o.weight;
    }
    DestroyOp::ALL[DestroyOp::ALL.len() - 1]
}
