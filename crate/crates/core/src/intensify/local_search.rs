use std::time::{Duration, Instant};

use super::candidates::candidate_set;
use super::service;
use crate::model::{Instance, Scored};
use crate::schedule::EvalOptions;

/// Node-count and wall-clock limit for an enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 1_000_000,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: u64, time_limit: Duration) -> Self {
        SearchBudget {
            max_nodes,
            time_limit,
        }
    }

    pub fn unlimited() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            time_limit: Duration::MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalSearchOutcome {
    pub scored: Scored,
    /// Strictly better than the input.
    pub improved: bool,
    pub nodes: u64,
    /// The budget ran out before the enumeration finished.
    pub exhausted: bool,
    /// Some refill set had more than 7 refills and only one tanker order
    /// was tried for it.
    pub approximate_order: bool,
}

/// Re-optimizes refill points, tanker order and service times with the
/// routes fixed. Refill points are restricted to the current refills and
/// their `kappa` route neighbours. Never returns anything worse than `start`.
pub fn local_search(
    instance: &Instance,
    start: &Scored,
    kappa: usize,
    budget: SearchBudget,
) -> LocalSearchOutcome {
    local_search_with(instance, start, kappa, budget, EvalOptions::default())
}

pub fn local_search_with(
    instance: &Instance,
    start: &Scored,
    kappa: usize,
    budget: SearchBudget,
    opts: EvalOptions,
) -> LocalSearchOutcome {
    let cand = candidate_set(&start.solution, kappa).mask(instance.num_nodes());
    let res = optimize_refills(
        instance,
        &start.solution.routes,
        &cand,
        budget,
        opts,
        start.search_cost(),
    );
    let improved = res.best.is_some();
    LocalSearchOutcome {
        scored: res.best.unwrap_or_else(|| start.clone()),
        improved,
        nodes: res.nodes,
        exhausted: res.exhausted,
        approximate_order: res.approximate_order,
    }
}

pub(crate) struct RefillSearch {
    /// Best solution strictly under the bar, if any.
    pub best: Option<Scored>,
    pub nodes: u64,
    pub exhausted: bool,
    pub approximate_order: bool,
}

const EXACT_ORDER_LIMIT: usize = 7;

#[derive(Debug, Clone)]
struct RouteOption {
    refills: Vec<usize>,
    value: f64,
    max_reach: f64,
}

struct Ctx<'a> {
    instance: &'a Instance,
    routes: &'a [Vec<usize>],
    opts: EvalOptions,
    budget: SearchBudget,
    started: Instant,
    nodes: u64,
    exhausted: bool,
    approximate_order: bool,
    bar: f64,
    best: Option<Scored>,
    fixed: f64,
}

impl Ctx<'_> {
    fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes.is_multiple_of(128) && self.started.elapsed() > self.budget.time_limit)
        {
            self.exhausted = true;
            return false;
        }
        true
    }
}

/// Exact search over refill sets drawn from `cand` (by node id) for fixed
/// routes: branch and bound over per-route refill choices, then tanker
/// orders by increasing length, each solved by the service LP. Only
/// solutions with search cost below `bar` are kept.
pub(crate) fn optimize_refills(
    instance: &Instance,
    routes: &[Vec<usize>],
    cand: &[bool],
    budget: SearchBudget,
    opts: EvalOptions,
    bar: f64,
) -> RefillSearch {
    let fixed: f64 = routes
        .iter()
        .map(|r| crate::model::objective::path_length(instance, r))
        .sum();
    let mut ctx = Ctx {
        instance,
        routes,
        opts,
        budget,
        started: Instant::now(),
        nodes: 0,
        exhausted: false,
        approximate_order: false,
        bar,
        best: None,
        fixed,
    };
    let mut options = Vec::with_capacity(routes.len());
    for route in routes {
        let opts_k = route_options(&mut ctx, route, cand);
        if opts_k.is_empty() {
            return ctx.finish();
        }
        options.push(opts_k);
    }
    let mut suffix = vec![0.0; routes.len() + 1];
    for k in (0..routes.len()).rev() {
        suffix[k] = suffix[k + 1] + options[k][0].value;
    }
    let mut chosen = Vec::with_capacity(routes.len());
    combine(&mut ctx, &options, &suffix, 0, &mut chosen, 0.0, 0.0);
    ctx.finish()
}

impl Ctx<'_> {
    fn finish(self) -> RefillSearch {
        RefillSearch {
            best: self.best,
            nodes: self.nodes,
            exhausted: self.exhausted,
            approximate_order: self.approximate_order,
        }
    }
}

/// All capacity-feasible refill choices for one route, cheapest bound first.
/// A refill at the last node never helps and is not generated.
fn route_options(ctx: &mut Ctx, route: &[usize], cand: &[bool]) -> Vec<RouteOption> {
    let inst = ctx.instance;
    if route.is_empty() {
        return vec![RouteOption {
            refills: vec![],
            value: 0.0,
            max_reach: 0.0,
        }];
    }
    let travel = crate::model::objective::path_length(inst, route);
    let tank = inst.tank_service();
    let mut out = Vec::new();
    let mut chosen = Vec::new();

    struct Walk {
        idx: usize,
        seg_lo: f64,
        seg_hi: f64,
        cap: f64,
        lo_total: f64,
    }

    fn rec(
        ctx: &mut Ctx,
        route: &[usize],
        cand: &[bool],
        w: Walk,
        chosen: &mut Vec<usize>,
        out: &mut Vec<RouteOption>,
        travel: f64,
        tank: f64,
    ) {
        if !ctx.tick() {
            return;
        }
        let inst = ctx.instance;
        let p = inst.params();
        let i = route[w.idx];
        let seg_lo = w.seg_lo + inst.min_service(i);
        let seg_hi = w.seg_hi + inst.max_service(i);
        let lo_total = w.lo_total + inst.min_service(i);
        if seg_lo > tank + 1e-9 {
            return;
        }
        if w.idx + 1 == route.len() {
            let cap = w.cap + seg_hi.min(tank);
            let refill_time = p.refill_time * chosen.len() as f64;
            let room = p.horizon - travel - refill_time;
            if room < lo_total - 1e-9 {
                return;
            }
            let max_reach = chosen.iter().map(|&r| inst.t(0, r)).fold(0.0, f64::max);
            out.push(RouteOption {
                refills: chosen.clone(),
                value: refill_time - cap.min(room),
                max_reach,
            });
            return;
        }
        rec(
            ctx,
            route,
            cand,
            Walk {
                idx: w.idx + 1,
                seg_lo,
                seg_hi,
                cap: w.cap,
                lo_total,
            },
            chosen,
            out,
            travel,
            tank,
        );
        if cand.get(i).copied().unwrap_or(false) {
            chosen.push(i);
            rec(
                ctx,
                route,
                cand,
                Walk {
                    idx: w.idx + 1,
                    seg_lo: 0.0,
                    seg_hi: 0.0,
                    cap: w.cap + seg_hi.min(tank),
                    lo_total,
                },
                chosen,
                out,
                travel,
                tank,
            );
            chosen.pop();
        }
    }

    rec(
        ctx,
        route,
        cand,
        Walk {
            idx: 0,
            seg_lo: 0.0,
            seg_hi: 0.0,
            cap: 0.0,
            lo_total: 0.0,
        },
        &mut chosen,
        &mut out,
        travel,
        tank,
    );
    out.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then_with(|| a.refills.cmp(&b.refills))
    });
    out
}

fn combine<'o>(
    ctx: &mut Ctx,
    options: &'o [Vec<RouteOption>],
    suffix: &[f64],
    k: usize,
    chosen: &mut Vec<&'o RouteOption>,
    value: f64,
    reach: f64,
) {
    if k == options.len() {
        leaf(ctx, chosen, value);
        return;
    }
    for opt in &options[k] {
        if ctx.exhausted {
            return;
        }
        let base = ctx.fixed + value + opt.value + suffix[k + 1];
        if base + 2.0 * reach >= ctx.bar - 1e-9 {
            break;
        }
        let r = reach.max(opt.max_reach);
        if base + 2.0 * r >= ctx.bar - 1e-9 {
            continue;
        }
        if !ctx.tick() {
            return;
        }
        chosen.push(opt);
        combine(ctx, options, suffix, k + 1, chosen, value + opt.value, r);
        chosen.pop();
    }
}

fn leaf(ctx: &mut Ctx, chosen: &[&RouteOption], value: f64) {
    let inst = ctx.instance;
    let n = inst.num_nodes();
    let seqs: Vec<&[usize]> = chosen.iter().map(|o| o.refills.as_slice()).collect();
    let total: usize = seqs.iter().map(|s| s.len()).sum();
    let mut refill = vec![false; n + 1];
    for &r in seqs.iter().flat_map(|s| s.iter()) {
        refill[r] = true;
    }
    let mut orders: Vec<(f64, Vec<usize>)> = if total <= EXACT_ORDER_LIMIT {
        let mut all = Vec::new();
        let mut cur = Vec::with_capacity(total);
        let mut pos = vec![0; seqs.len()];
        interleave(&seqs, &mut pos, &mut cur, &mut all);
        all.into_iter()
            .map(|o| (crate::model::objective::path_length(inst, &o), o))
            .collect()
    } else {
        ctx.approximate_order = true;
        let o = earliest_order(inst, ctx.routes, &refill);
        vec![(crate::model::objective::path_length(inst, &o), o)]
    };
    orders.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    for (len, order) in orders {
        if ctx.fixed + value + len >= ctx.bar - 1e-9 {
            break;
        }
        if !ctx.tick() {
            return;
        }
        if let Some(sc) = service::solve(inst, ctx.routes, &refill, &order, ctx.opts) {
            let cost = sc.search_cost();
            if cost < ctx.bar - 1e-9 {
                ctx.bar = cost;
                ctx.best = Some(sc);
            }
        }
    }
}

/// All merges of the per-route refill sequences that keep each route's order.
fn interleave(
    seqs: &[&[usize]],
    pos: &mut [usize],
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let mut done = true;
    for k in 0..seqs.len() {
        if pos[k] < seqs[k].len() {
            done = false;
            cur.push(seqs[k][pos[k]]);
            pos[k] += 1;
            interleave(seqs, pos, cur, out);
            pos[k] -= 1;
            cur.pop();
        }
    }
    if done {
        out.push(cur.clone());
    }
}

/// Refill nodes by refill start at minimum service, ties by id.
pub(crate) fn earliest_order(
    inst: &Instance,
    routes: &[Vec<usize>],
    refill: &[bool],
) -> Vec<usize> {
    let p = inst.params();
    let mut when = Vec::new();
    for route in routes {
        let mut clock = 0.0;
        let mut prev = 0;
        for &i in route {
            clock += inst.t(prev, i) + inst.min_service(i);
            if refill[i] {
                when.push((clock, i));
                clock += p.refill_time;
            }
            prev = i;
        }
    }
    when.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    when.into_iter().map(|(_, i)| i).collect()
}
