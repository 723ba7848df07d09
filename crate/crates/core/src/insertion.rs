//! Cheapest and regret insertion under full re-evaluation of the schedule.

use crate::model::Instance;
use crate::schedule::{search_cost_only, search_eval, AlphaConfig, EvalOptions, EvalResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rule {
    Greedy,
    Regret2,
}

/// Decides whether `v` may be placed between `prev` and `next` (0 = depot).
pub(crate) type Gate<'a> = &'a dyn Fn(usize, usize, usize) -> bool;

/// Inserts every pending node, one at a time, each candidate position
/// scored by the line-search cost of the resulting routes. Ties go to the
/// lower node id, then lower route index, then earlier position.
pub(crate) fn insert_all(
    instance: &Instance,
    mut routes: Vec<Vec<usize>>,
    mut pending: Vec<usize>,
    rule: Rule,
    alpha: &AlphaConfig,
    opts: EvalOptions,
    gate: Option<Gate>,
) -> (Vec<Vec<usize>>, EvalResult) {
    pending.sort_unstable();
    pending.dedup();
    while !pending.is_empty() {
        // (node index in pending, route, position, cost)
        let mut pick: Option<(usize, usize, usize, f64)> = None;
        let mut pick_regret = f64::NEG_INFINITY;
        for (pi, &v) in pending.iter().enumerate() {
            let mut best: Option<(usize, usize, f64)> = None;
            let mut second = f64::INFINITY;
            let gated = gate.filter(|g| any_position(&routes, v, g));
            for k in 0..routes.len() {
                for pos in 0..=routes[k].len() {
                    if let Some(g) = gated {
                        let prev = if pos == 0 { 0 } else { routes[k][pos - 1] };
                        let next = routes[k].get(pos).copied().unwrap_or(0);
                        if !g(prev, v, next) {
                            continue;
                        }
                    }
                    routes[k].insert(pos, v);
                    let cost = search_cost_only(instance, &routes, alpha, opts);
                    routes[k].remove(pos);
                    match best {
                        Some((_, _, b)) if cost >= b => second = second.min(cost),
                        _ => {
                            if let Some((_, _, b)) = best {
                                second = second.min(b);
                            }
                            best = Some((k, pos, cost));
                        }
                    }
                }
            }
            let Some((k, pos, cost)) = best else { continue };
            match rule {
                Rule::Greedy => {
                    if pick.is_none_or(|(_, _, _, c)| cost < c) {
                        pick = Some((pi, k, pos, cost));
                    }
                }
                Rule::Regret2 => {
                    let regret = second - cost;
                    if pick.is_none() || regret > pick_regret {
                        pick_regret = regret;
                        pick = Some((pi, k, pos, cost));
                    }
                }
            }
        }
        let (pi, k, pos, _) = pick.expect("every node has at least one position");
        let v = pending.remove(pi);
        routes[k].insert(pos, v);
    }
    let eval = search_eval(instance, &routes, alpha, opts);
    (routes, eval)
}

fn any_position(routes: &[Vec<usize>], v: usize, gate: Gate) -> bool {
    routes.iter().any(|r| {
        (0..=r.len()).any(|pos| {
            let prev = if pos == 0 { 0 } else { r[pos - 1] };
            let next = r.get(pos).copied().unwrap_or(0);
            gate(prev, v, next)
        })
    })
}
