//! Schedule construction for fixed sprayer routes: refill placement by a
//! reduced tank capacity, tanker routing in order of need, and absorption of
//! tanker delays into longer service, with a line search over the tank
//! fraction alpha.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::model::objective::check_partition;
use crate::model::{cost_of, realize_into, Instance, Scored, Solution};

/// Tank fractions tried by the line search.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaConfig {
    grid: Vec<f64>,
}

impl AlphaConfig {
    /// Grid must be strictly increasing and inside (0, 1].
    pub fn new(grid: Vec<f64>) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::InvalidInput("alpha grid is empty".into()));
        }
        for w in grid.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidInput(
                    "alpha grid must be strictly increasing".into(),
                ));
            }
        }
        if grid.iter().any(|&a| !(a > 0.0 && a <= 1.0)) {
            return Err(Error::InvalidInput(
                "alpha values must lie in (0, 1]".into(),
            ));
        }
        Ok(AlphaConfig { grid })
    }

    pub fn single(alpha: f64) -> Result<Self> {
        AlphaConfig::new(vec![alpha])
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }
}

impl Default for AlphaConfig {
    /// 0.60, 0.65, ..., 1.00
    fn default() -> Self {
        AlphaConfig {
            grid: (0..=8).map(|i| (60 + 5 * i) as f64 / 100.0).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalOptions {
    /// Waiting is allowed and not penalized.
    pub allow_waiting: bool,
}

/// Outcome of scheduling a set of routes.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub scored: Scored,
    pub alpha: f64,
    /// Total tanker delay found before any of it was absorbed.
    pub raw_waiting: f64,
    buffer_binding: bool,
}

impl EvalResult {
    pub fn solution(&self) -> &Solution {
        &self.scored.solution
    }

    pub fn total(&self) -> f64 {
        self.scored.total()
    }

    pub fn search_cost(&self) -> f64 {
        self.scored.search_cost()
    }

    /// Some delay could not be absorbed and remains as waiting.
    pub fn infeasible_waiting(&self) -> bool {
        self.scored.status.infeasible_waiting
    }

    pub fn is_feasible(&self) -> bool {
        self.scored.is_feasible()
    }

    pub fn into_scored(self) -> Scored {
        self.scored
    }
}

/// Schedules `routes` at a single tank fraction.
pub fn evaluate_at_alpha(
    instance: &Instance,
    routes: &[Vec<usize>],
    alpha: f64,
) -> Result<EvalResult> {
    evaluate_at_alpha_with(instance, routes, alpha, EvalOptions::default())
}

pub fn evaluate_at_alpha_with(
    instance: &Instance,
    routes: &[Vec<usize>],
    alpha: f64,
    opts: EvalOptions,
) -> Result<EvalResult> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidInput(format!("alpha {alpha} outside (0, 1]")));
    }
    validate_routes(instance, routes)?;
    Ok(plan(instance, routes, Rule::alpha(instance, alpha), opts))
}

/// Best schedule over the alpha grid; ties go to the larger alpha.
pub fn line_search(
    instance: &Instance,
    routes: &[Vec<usize>],
    cfg: &AlphaConfig,
) -> Result<EvalResult> {
    line_search_with(instance, routes, cfg, EvalOptions::default())
}

pub fn line_search_with(
    instance: &Instance,
    routes: &[Vec<usize>],
    cfg: &AlphaConfig,
    opts: EvalOptions,
) -> Result<EvalResult> {
    validate_routes(instance, routes)?;
    Ok(search_eval(instance, routes, cfg, opts))
}

/// Line search without validation; routes may leave nodes unvisited.
pub(crate) fn search_eval(
    instance: &Instance,
    routes: &[Vec<usize>],
    cfg: &AlphaConfig,
    opts: EvalOptions,
) -> EvalResult {
    let alpha =
        WORKSPACE.with(|ws| best_alpha(&mut ws.borrow_mut(), instance, routes, cfg, opts).0);
    plan(instance, routes, Rule::alpha(instance, alpha), opts)
}

/// The fixed policy used in practice: 10% above minimum quantity, refill
/// when the next node cannot be covered, full tank, delays absorbed by
/// whatever physical slack is left.
pub(crate) fn practice_eval(instance: &Instance, routes: &[Vec<usize>]) -> EvalResult {
    plan(
        instance,
        routes,
        Rule {
            alpha: 1.0,
            capacity: instance.params().sprayer_capacity,
            buffer: f64::INFINITY,
            practice: true,
        },
        EvalOptions::default(),
    )
}

fn validate_routes(instance: &Instance, routes: &[Vec<usize>]) -> Result<()> {
    let n = instance.num_nodes();
    let probe = Solution {
        routes: routes.to_vec(),
        service: vec![0.0; n + 1],
        refill: vec![false; n + 1],
        tanker_route: Vec::new(),
        schedule: Default::default(),
    };
    check_partition(instance, &probe)
}

#[derive(Debug, Clone, Copy)]
struct Rule {
    alpha: f64,
    /// Tank size used to place refills.
    capacity: f64,
    /// Service time available for absorbing delays in one tank load.
    buffer: f64,
    practice: bool,
}

impl Rule {
    fn alpha(instance: &Instance, alpha: f64) -> Rule {
        let p = instance.params();
        Rule {
            alpha,
            capacity: alpha * p.sprayer_capacity,
            buffer: (1.0 - alpha) * p.sprayer_capacity / p.spray_rate,
            practice: false,
        }
    }
}

fn initial_service_into(
    instance: &Instance,
    routes: &[Vec<usize>],
    practice: bool,
    s: &mut Vec<f64>,
) {
    s.clear();
    s.resize(instance.num_nodes() + 1, 0.0);
    for &i in routes.iter().flatten() {
        s[i] = if practice {
            (1.1 * instance.node(i).q_min).min(instance.node(i).q_max)
                / instance.params().spray_rate
        } else {
            instance.min_service(i)
        };
    }
}

/// Refill after node i when what is left cannot cover the next node.
fn refill_pattern(
    instance: &Instance,
    routes: &[Vec<usize>],
    service: &[f64],
    capacity: f64,
    out: &mut Vec<bool>,
) {
    let eta = instance.params().spray_rate;
    out.clear();
    out.resize(instance.num_nodes() + 1, false);
    for route in routes {
        let mut level = capacity;
        for (idx, &i) in route.iter().enumerate() {
            level -= eta * service[i];
            if let Some(&next) = route.get(idx + 1) {
                if level < eta * service[next] - 1e-9 {
                    out[i] = true;
                    level = capacity;
                }
            }
        }
    }
}

/// Buffers reused across evaluations.
#[derive(Default)]
struct Workspace {
    sol: Solution,
    place: Vec<(usize, usize)>,
    finish: Vec<f64>,
    refills: Vec<bool>,
    last_refills: Vec<bool>,
}

thread_local! {
    static WORKSPACE: RefCell<Workspace> = RefCell::new(Workspace::default());
}

/// Search cost of the best alpha without building a result.
pub(crate) fn search_cost_only(
    instance: &Instance,
    routes: &[Vec<usize>],
    cfg: &AlphaConfig,
    opts: EvalOptions,
) -> f64 {
    WORKSPACE.with(|ws| best_alpha(&mut ws.borrow_mut(), instance, routes, cfg, opts).1)
}

/// Runs the line search in `ws`; returns the winning alpha and its cost.
fn best_alpha(
    ws: &mut Workspace,
    instance: &Instance,
    routes: &[Vec<usize>],
    cfg: &AlphaConfig,
    opts: EvalOptions,
) -> (f64, f64) {
    let mut best: Option<(f64, f64)> = None;
    let mut last_binding = true;
    ws.last_refills.clear();
    for &alpha in cfg.grid.iter().rev() {
        let rule = Rule::alpha(instance, alpha);
        initial_service_into(instance, routes, rule.practice, &mut ws.sol.service);
        refill_pattern(
            instance,
            routes,
            &ws.sol.service,
            rule.capacity,
            &mut ws.refills,
        );
        // same refills and a buffer that never limited absorption: a smaller
        // alpha reproduces the same schedule and would lose the tie anyway
        if !last_binding && ws.refills == ws.last_refills {
            continue;
        }
        ws.last_refills.clone_from(&ws.refills);
        let (_, binding) = plan_into(ws, instance, routes, rule);
        last_binding = binding;
        let cost = cost_of(instance, &ws.sol, opts.allow_waiting);
        if best.is_none_or(|(_, c)| cost < c) {
            best = Some((alpha, cost));
        }
    }
    best.expect("alpha grid is never empty")
}

fn plan(instance: &Instance, routes: &[Vec<usize>], rule: Rule, opts: EvalOptions) -> EvalResult {
    WORKSPACE.with(|ws| {
        let ws = &mut *ws.borrow_mut();
        let (raw_waiting, buffer_binding) = plan_into(ws, instance, routes, rule);
        EvalResult {
            scored: Scored::assess(instance, ws.sol.clone(), opts.allow_waiting),
            alpha: rule.alpha,
            raw_waiting,
            buffer_binding,
        }
    })
}

/// Algorithm body: places refills, orders the tanker by earliest refill,
/// absorbs each tanker delay into the preceding tank load as far as the
/// rule allows and leaves the rest as waiting. Writes the realized
/// solution to `ws.sol`; returns the raw delay and whether the buffer bound.
fn plan_into(
    ws: &mut Workspace,
    instance: &Instance,
    routes: &[Vec<usize>],
    rule: Rule,
) -> (f64, bool) {
    let p = instance.params();
    let n = instance.num_nodes();
    let sol = &mut ws.sol;
    sol.routes.resize_with(routes.len(), Vec::new);
    for (dst, src) in sol.routes.iter_mut().zip(routes) {
        dst.clone_from(src);
    }
    initial_service_into(instance, routes, rule.practice, &mut sol.service);
    refill_pattern(
        instance,
        routes,
        &sol.service,
        rule.capacity,
        &mut sol.refill,
    );
    let service = &mut sol.service;
    let refill = &sol.refill;

    ws.place.clear();
    ws.place.resize(n + 1, (usize::MAX, 0));
    for (k, route) in routes.iter().enumerate() {
        for (idx, &i) in route.iter().enumerate() {
            ws.place[i] = (k, idx);
        }
    }

    // earliest refill starts, ignoring the tanker
    ws.finish.clear();
    ws.finish.resize(n + 1, 0.0);
    for route in routes {
        let mut clock = 0.0;
        let mut prev = 0;
        for &i in route {
            clock += instance.t(prev, i) + service[i];
            ws.finish[i] = clock;
            if refill[i] {
                clock += p.refill_time;
            }
            prev = i;
        }
    }
    let order = &mut sol.tanker_route;
    order.clear();
    order.extend((1..=n).filter(|&i| refill[i]));
    let finish = &ws.finish;
    order.sort_by(|&a, &b| finish[a].total_cmp(&finish[b]).then(a.cmp(&b)));

    let waiting = &mut sol.schedule.waiting;
    waiting.clear();
    waiting.resize(n + 1, 0.0);
    let mut raw_waiting = 0.0;
    let mut buffer_binding = false;
    let mut prev = 0usize;
    let mut prev_theta = 0.0;
    for (pos, &j) in order.iter().enumerate() {
        let w = if pos == 0 {
            instance.t(0, j) / p.speed_factor
        } else {
            prev_theta + p.refill_time + instance.t(prev, j) / p.speed_factor
        };
        let (k, idx) = ws.place[j];
        let route = &routes[k];
        // current finish time at j
        let mut clock = 0.0;
        let mut at = 0;
        for &i in &route[..=idx] {
            clock += instance.t(at, i) + service[i] + waiting[i];
            if refill[i] && i != j {
                clock += p.refill_time;
            }
            at = i;
        }
        let done = clock - waiting[j];
        let gap = w - done;
        let theta = if gap > 1e-12 {
            raw_waiting += gap;
            let start = route[..idx]
                .iter()
                .rposition(|&i| refill[i])
                .map_or(0, |q| q + 1);
            let seg = &route[start..=idx];
            let slack: f64 = seg
                .iter()
                .map(|&i| instance.max_service(i) - service[i])
                .sum();
            let used: f64 = seg.iter().map(|&i| service[i]).sum();
            let physical = (instance.tank_service() - used).max(0.0);
            let ext = gap.min(slack).min(rule.buffer).min(physical);
            if rule.buffer < gap.min(slack).min(physical) {
                buffer_binding = true;
            }
            if ext > 0.0 && slack > 0.0 {
                for &i in seg {
                    let room = instance.max_service(i) - service[i];
                    service[i] = (service[i] + ext * room / slack).min(instance.max_service(i));
                }
            }
            let rest = gap - ext;
            if rest > 1e-12 {
                waiting[j] = rest;
            }
            w
        } else {
            done
        };
        prev = j;
        prev_theta = theta;
    }
    realize_into(instance, sol);
    (raw_waiting, buffer_binding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_feasibility, FleetParams, Node, Point};

    fn t1() -> Instance {
        Instance::new(
            Point::new(0.0, 0.0),
            vec![
                Node {
                    id: 1,
                    x: 1.0,
                    y: 0.0,
                    q_min: 4.0,
                    q_max: 8.0,
                },
                Node {
                    id: 2,
                    x: 2.0,
                    y: 0.0,
                    q_min: 4.0,
                    q_max: 8.0,
                },
            ],
            FleetParams {
                num_sprayers: 1,
                sprayer_capacity: 6.0,
                tanker_capacity: 60.0,
                spray_rate: 2.0,
                refill_time: 1.0,
                speed_factor: 2.0,
                horizon: 100.0,
                zone_radius: 1.0,
            },
        )
        .unwrap()
    }

    #[test]
    fn two_node_line_at_full_tank() {
        let inst = t1();
        let r = evaluate_at_alpha(&inst, &[vec![1, 2]], 1.0).unwrap();
        let sol = r.solution();
        assert_eq!(sol.refill_nodes(), vec![1]);
        assert_eq!(sol.tanker_route, vec![1]);
        assert_eq!(&sol.service[1..], &[2.0, 2.0]);
        assert_eq!(r.total(), 3.0);
        assert!(!r.infeasible_waiting());
        assert!(check_feasibility(&inst, sol).is_feasible());
    }

    #[test]
    fn two_node_line_at_two_thirds() {
        let inst = t1();
        let r = evaluate_at_alpha(&inst, &[vec![1, 2]], 2.0 / 3.0).unwrap();
        assert_eq!(r.solution().refill_nodes(), vec![1]);
        assert_eq!(r.total(), 3.0);
        let ls = line_search(&inst, &[vec![1, 2]], &AlphaConfig::default()).unwrap();
        assert_eq!(ls.total(), 3.0);
        assert_eq!(ls.alpha, 1.0);
    }

    #[test]
    fn single_node_needs_no_tanker() {
        let inst = Instance::new(
            Point::new(0.0, 0.0),
            vec![Node {
                id: 1,
                x: 1.0,
                y: 0.0,
                q_min: 2.0,
                q_max: 4.0,
            }],
            t1().params().clone(),
        )
        .unwrap();
        let r = evaluate_at_alpha(&inst, &[vec![1]], 1.0).unwrap();
        assert!(r.solution().tanker_route.is_empty());
        assert_eq!(r.solution().service[1], 1.0);
        assert_eq!(r.total(), 1.0);
    }

    #[test]
    fn practice_rule_on_two_node_line() {
        let inst = t1();
        let r = practice_eval(&inst, &[vec![1, 2]]);
        assert_eq!(r.solution().refill_nodes(), vec![1]);
        assert!((r.total() - 2.6).abs() < 1e-12);
        assert!(check_feasibility(&inst, r.solution()).is_feasible());
    }

    #[test]
    fn rejects_bad_input() {
        let inst = t1();
        assert!(matches!(
            evaluate_at_alpha(&inst, &[vec![1]], 1.0),
            Err(Error::Structural(_))
        ));
        assert!(evaluate_at_alpha(&inst, &[vec![1, 2]], 0.0).is_err());
        assert!(AlphaConfig::new(vec![0.7, 0.6]).is_err());
        assert!(AlphaConfig::new(vec![0.5, 1.2]).is_err());
        assert_eq!(AlphaConfig::default().grid().len(), 9);
    }

    #[test]
    fn delay_absorbed_up_to_buffer_and_tank() {
        // two sprayers share a tanker; the second refill must wait for it
        let q = |id, x, y| Node {
            id,
            x,
            y,
            q_min: 2.0,
            q_max: 6.0,
        };
        let inst = Instance::new(
            Point::new(0.0, 0.0),
            vec![
                q(1, 0.0, 1.0),
                q(2, 0.0, -1.0),
                q(3, 0.0, 2.0),
                q(4, 0.0, -2.0),
            ],
            FleetParams {
                num_sprayers: 2,
                sprayer_capacity: 3.0,
                tanker_capacity: 60.0,
                spray_rate: 2.0,
                refill_time: 1.0,
                speed_factor: 1.0,
                horizon: 100.0,
                zone_radius: 1.0,
            },
        )
        .unwrap();
        let routes = [vec![1, 3], vec![2, 4]];
        // alpha = 1: refills at 1 and 2 due at 2, tanker reaches 2 at 5; no buffer,
        // physical room 0.5 service left in the first load
        let r = evaluate_at_alpha(&inst, &routes, 1.0).unwrap();
        assert_eq!(r.solution().tanker_route, vec![1, 2]);
        assert!((r.raw_waiting - 3.0).abs() < 1e-12);
        assert!(r.infeasible_waiting());
        assert!((r.solution().schedule.waiting[2] - 3.0).abs() < 1e-12);
        assert!((r.scored.objective.waiting_penalty - 30.0).abs() < 1e-9);
        let rep = check_feasibility(&inst, r.solution());
        assert_eq!(
            rep.families(),
            vec![crate::model::ConstraintFamily::NoWaiting]
        );
        // alpha = 0.6: buffer 0.6 but only 0.5 fits in the tank
        let r = evaluate_at_alpha(&inst, &routes, 0.6).unwrap();
        assert!((r.raw_waiting - 3.0).abs() < 1e-12);
        assert!((r.solution().service[2] - 1.5).abs() < 1e-12);
        assert!((r.solution().schedule.waiting[2] - 2.5).abs() < 1e-12);
        let ls = line_search(&inst, &routes, &AlphaConfig::default()).unwrap();
        assert!(ls.search_cost() <= r.search_cost());
    }
}
