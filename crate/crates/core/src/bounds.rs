//! Lower bounds on the objective and an upper bound on per-sprayer service.

use crate::construct::held_karp_table;
use crate::error::Result;
use crate::model::Instance;
use crate::oracle::{exact_solve_relaxed, OracleCaps};

/// Analytic bound: half the cheapest in and out arcs of every node, the
/// fewest refills the total minimum demand forces, and every node served
/// at its maximum.
pub fn composite_lower_bound(instance: &Instance) -> f64 {
    let p = instance.params();
    let n = instance.num_nodes();
    let travel: f64 = (0..=n)
        .map(|a| {
            let cheapest = (0..=n)
                .filter(|&b| b != a)
                .map(|b| instance.t(a, b))
                .fold(f64::INFINITY, f64::min);
            // symmetric metric: cheapest in equals cheapest out
            if cheapest.is_finite() {
                cheapest
            } else {
                0.0
            }
        })
        .sum();
    let demand: f64 = instance.nodes().iter().map(|v| v.q_min).sum();
    let forced = ((demand - p.num_sprayers as f64 * p.sprayer_capacity) / p.sprayer_capacity)
        .ceil()
        .max(0.0);
    let service: f64 = (1..=n).map(|i| instance.max_service(i)).sum();
    travel + p.refill_time * forced - service
}

/// Exact optimum of the problem without tanker and with instantaneous
/// refills. Refused above the oracle caps; `None` if even the relaxation is
/// infeasible.
pub fn relaxed_exact_bound(instance: &Instance, caps: &OracleCaps) -> Result<Option<f64>> {
    exact_solve_relaxed(instance, caps)
}

/// Most service time one sprayer can perform within the horizon: exact
/// over node subsets up to this many nodes, analytic above.
pub const EXACT_SERVICE_BOUND_NODES: usize = 15;

pub fn service_upper_bound(instance: &Instance) -> f64 {
    let n = instance.num_nodes();
    let horizon = instance.params().horizon;
    if n <= EXACT_SERVICE_BOUND_NODES {
        let tours = held_karp_table(instance);
        let mut best = 0.0f64;
        for mask in 1..1usize << n {
            let cap: f64 = (0..n)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| instance.max_service(b + 1))
                .sum();
            best = best.max(max_service_within(instance, horizon - tours[mask], cap));
        }
        best
    } else {
        let reach = (1..=n)
            .map(|i| instance.t(0, i))
            .fold(f64::INFINITY, f64::min);
        let cap: f64 = (1..=n).map(|i| instance.max_service(i)).sum();
        max_service_within(instance, horizon - 2.0 * reach, cap)
    }
}

/// Largest s <= cap with s + xi * (refills needed for s) <= budget, where a
/// sprayer needs ceil(eta s / Qs) - 1 refills after its first tank.
fn max_service_within(instance: &Instance, budget: f64, cap: f64) -> f64 {
    if budget < 0.0 {
        return 0.0;
    }
    let xi = instance.params().refill_time;
    let tank = instance.tank_service();
    let mut best = 0.0f64;
    let mut r = 0usize;
    while (r as f64) * tank < cap {
        let s = cap.min((r + 1) as f64 * tank).min(budget - xi * r as f64);
        if s > r as f64 * tank || (r == 0 && s >= 0.0) {
            best = best.max(s);
        }
        r += 1;
    }
    best
}

/// Relative gap in percent against the magnitude of the bound.
pub fn gap_percent(value: f64, lower_bound: f64) -> f64 {
    if lower_bound == 0.0 {
        return if value == 0.0 { 0.0 } else { f64::INFINITY };
    }
    (value - lower_bound) / lower_bound.abs() * 100.0
}
