//! Exhaustive solver for tiny instances, used as ground truth.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intensify::{optimize_refills, SearchBudget};
use crate::model::{objective::path_length, Instance, Scored};
use crate::schedule::EvalOptions;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCaps {
    pub max_nodes: usize,
    pub max_sprayers: usize,
    pub time_limit: Duration,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_nodes: 8,
            max_sprayers: 2,
            time_limit: Duration::from_secs(120),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    /// Optimal solution; `None` proves the instance infeasible.
    pub best: Option<Scored>,
    /// Route sets enumerated.
    pub route_sets: u64,
    pub elapsed: Duration,
}

impl OracleOutcome {
    pub fn objective(&self) -> Option<f64> {
        self.best.as_ref().map(|b| b.total())
    }
}

pub fn exact_solve(instance: &Instance, caps: &OracleCaps) -> Result<OracleOutcome> {
    exact_solve_with(instance, caps, EvalOptions::default())
}

/// Enumerates every split of the nodes over the sprayers (up to relabeling),
/// every visiting order and every refill set and tanker order, solving
/// service times by LP.
pub fn exact_solve_with(
    instance: &Instance,
    caps: &OracleCaps,
    opts: EvalOptions,
) -> Result<OracleOutcome> {
    check_caps(instance, caps)?;
    let started = Instant::now();
    let n = instance.num_nodes();
    let k = instance.num_sprayers();
    let splits = splits(n, k);
    let bar = AtomicU64::new(f64::INFINITY.to_bits());
    let timed_out = AtomicBool::new(false);
    let cand = vec![true; n + 1];

    let results: Vec<(Option<Scored>, u64)> = splits
        .par_iter()
        .map(|groups| {
            let mut best: Option<Scored> = None;
            let mut count = 0;
            for_each_route_set(groups, &mut |routes| {
                if timed_out.load(Ordering::Relaxed) {
                    return false;
                }
                let remaining = caps.time_limit.saturating_sub(started.elapsed());
                if remaining.is_zero() {
                    timed_out.store(true, Ordering::Relaxed);
                    return false;
                }
                count += 1;
                // keep anything within 1e-9 of the shared bar so the merge
                // below sees every tie regardless of thread timing
                let shared = f64::from_bits(bar.load(Ordering::Relaxed)) + 2e-9;
                let local = best.as_ref().map_or(f64::INFINITY, |b| b.search_cost());
                let travel: f64 = routes.iter().map(|r| path_length(instance, r)).sum();
                let all_service: f64 = routes
                    .iter()
                    .flatten()
                    .map(|&i| instance.max_service(i))
                    .sum();
                if travel - all_service >= shared.min(local) - 1e-9 {
                    return true;
                }
                let search = optimize_refills(
                    instance,
                    routes,
                    &cand,
                    SearchBudget::new(u64::MAX, remaining),
                    opts,
                    shared.min(local),
                );
                if search.exhausted {
                    timed_out.store(true, Ordering::Relaxed);
                    return false;
                }
                if let Some(sc) = search.best.filter(|s| s.is_feasible()) {
                    let c = sc.search_cost();
                    bar.fetch_min(c.to_bits(), Ordering::Relaxed);
                    best = Some(sc);
                }
                true
            });
            (best, count)
        })
        .collect();

    if timed_out.load(Ordering::Relaxed) {
        return Err(Error::Refused(format!(
            "oracle exceeded its time budget of {:.0} s",
            caps.time_limit.as_secs_f64()
        )));
    }
    let route_sets = results.iter().map(|r| r.1).sum();
    let min = results
        .iter()
        .filter_map(|r| r.0.as_ref().map(|s| s.search_cost()))
        .fold(f64::INFINITY, f64::min);
    let best = results
        .into_iter()
        .filter_map(|r| r.0)
        .find(|s| s.search_cost() <= min + 1e-9);
    Ok(OracleOutcome {
        best,
        route_sets,
        elapsed: started.elapsed(),
    })
}

/// Optimum with the tanker removed: refills take no time and need no
/// tanker, but still cost the refill time in the objective. `None` when
/// even this relaxation is infeasible.
pub fn exact_solve_relaxed(instance: &Instance, caps: &OracleCaps) -> Result<Option<f64>> {
    check_caps(instance, caps)?;
    let n = instance.num_nodes();
    let k = instance.num_sprayers();
    let full = (1usize << n) - 1;
    // best single-route value per node subset
    let best: Vec<f64> = (0..=full)
        .into_par_iter()
        .map(|mask| {
            if mask == 0 {
                return f64::INFINITY;
            }
            let nodes: Vec<usize> = (0..n)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b + 1)
                .collect();
            let mut value = f64::INFINITY;
            permutations(&nodes, &mut |perm| {
                value = value.min(relaxed_route(instance, perm));
                true
            });
            value
        })
        .collect();
    let value = match k {
        1 => best[full],
        _ => (1..full)
            .filter(|m| m & 1 == 1)
            .map(|m| best[m] + best[full ^ m])
            .fold(f64::INFINITY, f64::min),
    };
    Ok(value.is_finite().then_some(value))
}

/// Travel plus the cheapest refill cost minus the most service one route
/// can deliver when refills are instantaneous.
fn relaxed_route(inst: &Instance, route: &[usize]) -> f64 {
    let p = inst.params();
    let travel = path_length(inst, route);
    let room = p.horizon - travel;
    let tank = inst.tank_service();
    let lo_total: f64 = route.iter().map(|&i| inst.min_service(i)).sum();
    if lo_total > room + 1e-9 {
        return f64::INFINITY;
    }
    let cuts = route.len() - 1;
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << cuts) {
        let (mut lo, mut hi, mut cap) = (0.0, 0.0, 0.0);
        let mut ok = true;
        for (idx, &i) in route.iter().enumerate() {
            lo += inst.min_service(i);
            hi += inst.max_service(i);
            if lo > tank + 1e-9 {
                ok = false;
                break;
            }
            if idx == cuts || mask >> idx & 1 == 1 {
                cap += f64::min(hi, tank);
                lo = 0.0;
                hi = 0.0;
            }
        }
        if ok {
            let v = p.refill_time * mask.count_ones() as f64 - f64::min(cap, room);
            best = best.min(v);
        }
    }
    travel + best
}

fn check_caps(instance: &Instance, caps: &OracleCaps) -> Result<()> {
    if instance.num_nodes() > caps.max_nodes || instance.num_sprayers() > caps.max_sprayers {
        return Err(Error::Refused(format!(
            "oracle handles at most {} nodes and {} sprayers, instance has {} and {}",
            caps.max_nodes,
            caps.max_sprayers,
            instance.num_nodes(),
            instance.num_sprayers()
        )));
    }
    Ok(())
}

/// Node groups per sprayer, nonempty, with node 1 always in the first
/// group and groups listed by smallest member.
fn splits(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        i: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i > n {
            if cur.len() == k {
                out.push(cur.clone());
            }
            return;
        }
        // more groups still to open than nodes left
        if k - cur.len() > n - i + 1 {
            return;
        }
        for g in 0..cur.len() {
            cur[g].push(i);
            rec(i + 1, n, k, cur, out);
            cur[g].pop();
        }
        if cur.len() < k {
            cur.push(vec![i]);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Calls `f` on every combination of visiting orders of the groups; stops
/// when `f` returns false.
fn for_each_route_set(groups: &[Vec<usize>], f: &mut dyn FnMut(&[Vec<usize>]) -> bool) {
    fn rec(
        groups: &[Vec<usize>],
        k: usize,
        cur: &mut Vec<Vec<usize>>,
        f: &mut dyn FnMut(&[Vec<usize>]) -> bool,
    ) -> bool {
        if k == groups.len() {
            return f(cur);
        }
        permutations(&groups[k], &mut |perm| {
            cur.push(perm.to_vec());
            let go = rec(groups, k + 1, cur, f);
            cur.pop();
            go
        })
    }
    rec(groups, 0, &mut Vec::new(), f);
}

/// Lexicographic permutations; returns false if `f` stopped early.
fn permutations(items: &[usize], f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut p = items.to_vec();
    p.sort_unstable();
    loop {
        if !f(&p) {
            return false;
        }
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return true;
        };
        let j = (i..p.len())
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_counts() {
        // Stirling numbers of the second kind
        assert_eq!(splits(4, 2).len(), 7);
        assert_eq!(splits(5, 1).len(), 1);
        assert_eq!(splits(3, 3).len(), 1);
        assert!(splits(2, 3).is_empty());
        for s in splits(5, 2) {
            assert_eq!(s[0][0], 1);
        }
    }

    #[test]
    fn permutation_count() {
        let mut c = 0;
        permutations(&[3, 1, 2, 4], &mut |_| {
            c += 1;
            true
        });
        assert_eq!(c, 24);
    }
}
