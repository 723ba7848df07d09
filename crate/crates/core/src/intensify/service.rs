//! Exact service times for fixed routes, refills and tanker order.
//!
//! Every constraint touches service times only through the total of each
//! tank load (the nodes served between two fills), so the problem is solved
//! over one variable per load and the totals are spread over the nodes
//! afterwards.

use crate::error::{Error, Result};
use crate::lp::{Lp, LpOutcome, Relation};
use crate::model::objective::check_partition;
use crate::model::{Instance, Scored, Solution};
use crate::schedule::EvalOptions;

/// Maximizes total service for the given refill nodes and tanker order.
/// `Ok(None)` when no service vector satisfies the constraints.
pub fn optimize_service_times(
    instance: &Instance,
    routes: &[Vec<usize>],
    refills: &[usize],
    tanker_order: &[usize],
) -> Result<Option<Scored>> {
    optimize_service_times_with(
        instance,
        routes,
        refills,
        tanker_order,
        EvalOptions::default(),
    )
}

pub fn optimize_service_times_with(
    instance: &Instance,
    routes: &[Vec<usize>],
    refills: &[usize],
    tanker_order: &[usize],
    opts: EvalOptions,
) -> Result<Option<Scored>> {
    let n = instance.num_nodes();
    check_partition(
        instance,
        &Solution {
            routes: routes.to_vec(),
            service: vec![0.0; n + 1],
            refill: vec![false; n + 1],
            tanker_route: vec![],
            schedule: Default::default(),
        },
    )?;
    let mut flag = vec![false; n + 1];
    for &r in refills {
        instance.check_id(r)?;
        if flag[r] {
            return Err(Error::InvalidInput(format!("refill node {r} listed twice")));
        }
        flag[r] = true;
    }
    let mut sorted_order = tanker_order.to_vec();
    sorted_order.sort_unstable();
    let mut sorted_refills = refills.to_vec();
    sorted_refills.sort_unstable();
    if sorted_order != sorted_refills {
        return Err(Error::InvalidInput(
            "tanker order is not a permutation of the refill set".into(),
        ));
    }
    Ok(solve(instance, routes, &flag, tanker_order, opts))
}

/// Load structure of a route set under fixed refills.
struct Loads {
    /// (route, first index, last index inclusive, ends with a refill)
    segs: Vec<(usize, usize, usize, bool)>,
    lo: Vec<f64>,
    cap: Vec<f64>,
    /// Load index that ends at each refill node.
    ends_at: Vec<usize>,
}

fn loads(instance: &Instance, routes: &[Vec<usize>], refill: &[bool]) -> Loads {
    let mut segs = Vec::new();
    let mut ends_at = vec![usize::MAX; refill.len()];
    for (k, route) in routes.iter().enumerate() {
        let mut start = 0;
        for (idx, &i) in route.iter().enumerate() {
            if refill[i] || idx + 1 == route.len() {
                if refill[i] {
                    ends_at[i] = segs.len();
                }
                segs.push((k, start, idx, refill[i]));
                start = idx + 1;
            }
        }
    }
    let tank = instance.tank_service();
    let mut lo = Vec::with_capacity(segs.len());
    let mut cap = Vec::with_capacity(segs.len());
    for &(k, a, b, _) in &segs {
        let nodes = &routes[k][a..=b];
        lo.push(nodes.iter().map(|&i| instance.min_service(i)).sum::<f64>());
        cap.push(
            nodes
                .iter()
                .map(|&i| instance.max_service(i))
                .sum::<f64>()
                .min(tank),
        );
    }
    Loads {
        segs,
        lo,
        cap,
        ends_at,
    }
}

/// Core solve without input validation. Routes may be a partial set.
pub(crate) fn solve(
    instance: &Instance,
    routes: &[Vec<usize>],
    refill: &[bool],
    tanker_order: &[usize],
    opts: EvalOptions,
) -> Option<Scored> {
    let p = instance.params();
    let n = instance.num_nodes();
    let mut place = vec![(usize::MAX, 0usize); n + 1];
    for (k, route) in routes.iter().enumerate() {
        for (idx, &i) in route.iter().enumerate() {
            place[i] = (k, idx);
        }
    }
    // the tanker cannot serve a route's refills out of route order
    let mut last_idx = vec![None; routes.len()];
    for &r in tanker_order {
        let (k, idx) = place[r];
        if let Some(prev) = last_idx[k] {
            if idx <= prev {
                return None;
            }
        }
        last_idx[k] = Some(idx);
    }

    let ld = loads(instance, routes, refill);
    let g = ld.segs.len();
    for s in 0..g {
        if ld.lo[s] > ld.cap[s] + 1e-9 {
            return None;
        }
    }
    let n_wait = if opts.allow_waiting {
        tanker_order.len()
    } else {
        0
    };
    let mut wait_var = vec![usize::MAX; n + 1];
    for (q, &r) in tanker_order.iter().enumerate().take(n_wait) {
        wait_var[r] = g + q;
    }
    let mut c = vec![0.0; g + n_wait];
    c[..g].fill(1.0);
    let mut lp = Lp::maximize(c);

    for s in 0..g {
        lp.add(&[(s, 1.0)], Relation::Le, (ld.cap[s] - ld.lo[s]).max(0.0));
    }

    // refill start = fixed part + sum of (lo + x) over earlier loads of the
    // route + waits at earlier refills of the route
    let theta = |r: usize| -> (f64, Vec<(usize, f64)>) {
        let (k, idx) = place[r];
        let route = &routes[k];
        let mut fixed = 0.0;
        let mut prev = 0;
        let mut terms = Vec::new();
        for &i in &route[..=idx] {
            fixed += instance.t(prev, i);
            if refill[i] {
                let s = ld.ends_at[i];
                fixed += ld.lo[s];
                terms.push((s, 1.0));
                if wait_var[i] != usize::MAX {
                    terms.push((wait_var[i], 1.0));
                }
                if i != r {
                    fixed += p.refill_time;
                }
            }
            prev = i;
        }
        (fixed, terms)
    };

    let mut prev: Option<usize> = None;
    for &r in tanker_order {
        let (fb, tb) = theta(r);
        match prev {
            None => {
                let need = instance.t(0, r) / p.speed_factor;
                lp.add(&tb, Relation::Ge, need - fb);
            }
            Some(a) => {
                let (fa, ta) = theta(a);
                let mut terms = tb.clone();
                terms.extend(ta.iter().map(|&(j, v)| (j, -v)));
                let need = p.refill_time + instance.t(a, r) / p.speed_factor;
                lp.add(&terms, Relation::Ge, need - (fb - fa));
            }
        }
        prev = Some(r);
    }

    for (k, route) in routes.iter().enumerate() {
        if route.is_empty() {
            continue;
        }
        let mut fixed = crate::model::objective::path_length(instance, route);
        let mut terms = Vec::new();
        for (s, seg) in ld.segs.iter().enumerate() {
            if seg.0 == k {
                fixed += ld.lo[s];
                terms.push((s, 1.0));
            }
        }
        for &i in route {
            if refill[i] {
                fixed += p.refill_time;
                if wait_var[i] != usize::MAX {
                    terms.push((wait_var[i], 1.0));
                }
            }
        }
        lp.add(&terms, Relation::Le, p.horizon - fixed);
    }

    let mut refilled_lo = 0.0;
    let mut terms = Vec::new();
    for (s, seg) in ld.segs.iter().enumerate() {
        if seg.3 {
            refilled_lo += ld.lo[s];
            terms.push((s, p.spray_rate));
        }
    }
    if !terms.is_empty() {
        lp.add(
            &terms,
            Relation::Le,
            p.tanker_capacity - p.spray_rate * refilled_lo,
        );
    }

    let x = match lp.solve() {
        LpOutcome::Optimal { x, .. } => x,
        _ => return None,
    };

    let mut service = vec![0.0; n + 1];
    for (s, &(k, a, b, _)) in ld.segs.iter().enumerate() {
        let nodes = &routes[k][a..=b];
        let extra = x[s].clamp(0.0, (ld.cap[s] - ld.lo[s]).max(0.0));
        let room: f64 = nodes
            .iter()
            .map(|&i| instance.max_service(i) - instance.min_service(i))
            .sum();
        for &i in nodes {
            let (lo, hi) = (instance.min_service(i), instance.max_service(i));
            service[i] = if room > 0.0 {
                (lo + extra * (hi - lo) / room).min(hi)
            } else {
                lo
            };
        }
    }
    let mut waiting = vec![0.0; n + 1];
    for &r in tanker_order.iter().take(n_wait) {
        let m = x[wait_var[r]];
        if m > 1e-9 {
            waiting[r] = m;
        }
    }
    let solution = Solution::build(
        instance,
        routes.to_vec(),
        service,
        tanker_order.to_vec(),
        waiting,
    );
    Some(Scored::assess(instance, solution, opts.allow_waiting))
}

/// Brute-force check of the service problem: grid over the totals of
/// refill-ending loads (step `step`), node-level timing, final loads set to
/// their largest admissible value. Returns the best total service found.
///
/// Refuses more than three refills.
pub fn grid_service_oracle(
    instance: &Instance,
    routes: &[Vec<usize>],
    refills: &[usize],
    tanker_order: &[usize],
    step: f64,
) -> Result<Option<f64>> {
    if refills.len() > 3 {
        return Err(Error::Refused(format!(
            "grid oracle handles at most 3 refills, got {}",
            refills.len()
        )));
    }
    let p = instance.params();
    let n = instance.num_nodes();
    let mut refill = vec![false; n + 1];
    for &r in refills {
        refill[r] = true;
    }
    // every load as an explicit list of nodes
    let mut loads: Vec<(usize, Vec<usize>, bool)> = Vec::new();
    for (k, route) in routes.iter().enumerate() {
        let mut cur = Vec::new();
        for &i in route {
            cur.push(i);
            if refill[i] {
                loads.push((k, std::mem::take(&mut cur), true));
            }
        }
        if !cur.is_empty() {
            loads.push((k, cur, false));
        }
    }
    let bounds = |nodes: &[usize]| {
        let lo: f64 = nodes.iter().map(|&i| instance.node(i).q_min).sum::<f64>() / p.spray_rate;
        let hi: f64 = nodes.iter().map(|&i| instance.node(i).q_max).sum::<f64>() / p.spray_rate;
        (lo, hi.min(p.sprayer_capacity / p.spray_rate))
    };
    let grid_loads: Vec<usize> = (0..loads.len()).filter(|&l| loads[l].2).collect();
    let mut axes = Vec::new();
    for &l in &grid_loads {
        let (lo, hi) = bounds(&loads[l].1);
        if lo > hi + 1e-9 {
            return Ok(None);
        }
        let steps = ((hi - lo) / step + 1e-9).floor() as usize;
        axes.push((lo, steps));
    }
    let mut best: Option<f64> = None;
    let mut idx = vec![0usize; axes.len()];
    loop {
        let totals: Vec<f64> = axes
            .iter()
            .zip(&idx)
            .map(|(&(lo, _), &i)| lo + i as f64 * step)
            .collect();
        if let Some(v) = grid_point(
            instance,
            routes,
            &refill,
            tanker_order,
            &loads,
            &grid_loads,
            &totals,
        ) {
            if best.is_none_or(|b| v > b) {
                best = Some(v);
            }
        }
        // odometer
        let mut d = 0;
        loop {
            if d == axes.len() {
                return Ok(best);
            }
            if idx[d] < axes[d].1 {
                idx[d] += 1;
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

fn grid_point(
    instance: &Instance,
    routes: &[Vec<usize>],
    refill: &[bool],
    tanker_order: &[usize],
    loads: &[(usize, Vec<usize>, bool)],
    grid_loads: &[usize],
    totals: &[f64],
) -> Option<f64> {
    let p = instance.params();
    let n = instance.num_nodes();
    // spread each chosen total greedily node by node
    let mut s = vec![0.0; n + 1];
    let mut total_service = 0.0;
    for (&l, &tot) in grid_loads.iter().zip(totals) {
        let mut left = tot;
        for &i in &loads[l].1 {
            let lo = instance.node(i).q_min / p.spray_rate;
            s[i] = lo;
            left -= lo;
        }
        for &i in &loads[l].1 {
            let room = instance.node(i).q_max / p.spray_rate - s[i];
            let add = room.min(left.max(0.0));
            s[i] += add;
            left -= add;
        }
        total_service += tot;
    }
    let used: f64 = totals.iter().sum::<f64>() * p.spray_rate;
    if used > p.tanker_capacity + 1e-9 {
        return None;
    }
    // refill starts and the time each route reaches the start of its final load
    let mut theta = vec![0.0; n + 1];
    for (k, route) in routes.iter().enumerate() {
        let mut clock = 0.0;
        let mut at = 0;
        let last_refill = route.iter().rposition(|&i| refill[i]);
        let head = last_refill.map_or(0, |q| q + 1);
        for &i in &route[..head] {
            clock += instance.location(at).dist(&instance.location(i)) + s[i];
            if refill[i] {
                theta[i] = clock;
                clock += p.refill_time;
            }
            at = i;
        }
        // final load: fill as much as horizon and tank allow
        let tail = &route[head..];
        let mut travel = 0.0;
        let mut prev = at;
        for &i in tail {
            travel += instance.location(prev).dist(&instance.location(i));
            prev = i;
        }
        if !route.is_empty() {
            travel += instance.location(prev).dist(&instance.location(0));
        }
        if let Some(fin) = loads.iter().find(|l| l.0 == k && !l.2) {
            let lo: f64 = fin.1.iter().map(|&i| instance.node(i).q_min).sum::<f64>() / p.spray_rate;
            let hi: f64 = (fin.1.iter().map(|&i| instance.node(i).q_max).sum::<f64>()
                / p.spray_rate)
                .min(p.sprayer_capacity / p.spray_rate);
            let room = p.horizon - clock - travel;
            if room < lo - 1e-9 || lo > hi + 1e-9 {
                return None;
            }
            total_service += hi.min(room);
        } else if clock + travel > p.horizon + 1e-9 {
            return None;
        }
    }
    let mut clock = 0.0;
    let mut at = 0;
    for &r in tanker_order {
        let arrive = clock + instance.location(at).dist(&instance.location(r)) / p.speed_factor;
        if arrive > theta[r] + 1e-9 {
            return None;
        }
        clock = theta[r] + p.refill_time;
        at = r;
    }
    Some(total_service)
}
