use serde::{Deserialize, Serialize};

use super::objective::objective_unchecked;
use super::{Instance, ObjectiveBreakdown, TOL, WAITING_PENALTY};

/// Times and tank levels derived from a solution. Vectors are indexed by
/// node id; entry 0 is unused. Entries of non-refill nodes in the refill
/// vectors are zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Sprayer arrival time y.
    pub arrival: Vec<f64>,
    /// Refill start theta = arrival + service + waiting.
    pub refill_start: Vec<f64>,
    /// Tanker arrival w.
    pub tanker_arrival: Vec<f64>,
    /// Idle time m before refilling.
    pub waiting: Vec<f64>,
    /// Sprayer tank level on arrival.
    pub sprayer_tank: Vec<f64>,
    /// Tanker level on arrival, before refilling.
    pub tanker_tank: Vec<f64>,
    /// Fertilizer transferred at each refill.
    pub refill_qty: Vec<f64>,
    /// Time each sprayer is back at the depot.
    pub route_return: Vec<f64>,
    /// Time the tanker is back at the depot (0 when unused).
    pub tanker_return: f64,
    pub feasible: bool,
}

/// Routes, service times, refill decisions and the derived schedule.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// One sequence of field nodes per sprayer, depot excluded.
    pub routes: Vec<Vec<usize>>,
    /// Service time per node id.
    pub service: Vec<f64>,
    /// Refill flag per node id.
    pub refill: Vec<bool>,
    /// Refill nodes in tanker visiting order.
    pub tanker_route: Vec<usize>,
    pub schedule: Schedule,
}

/// Hard-constraint excesses of a solution, used to rank infeasible ones.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Status {
    pub horizon_excess: f64,
    pub tanker_excess: f64,
    pub late_tanker: f64,
    pub empty_routes: usize,
    pub total_waiting: f64,
    pub infeasible_waiting: bool,
}

impl Status {
    pub fn hard_excess(&self) -> f64 {
        self.horizon_excess + self.tanker_excess + self.late_tanker
    }

    pub fn is_hard_feasible(&self) -> bool {
        self.hard_excess() <= TOL && self.empty_routes == 0
    }

    pub fn is_feasible(&self) -> bool {
        self.is_hard_feasible() && !self.infeasible_waiting
    }
}

pub(crate) const HARD_PENALTY: f64 = 1e4;
pub(crate) const EMPTY_ROUTE_PENALTY: f64 = 1e7;

/// A solution together with its objective and status.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scored {
    pub solution: Solution,
    pub objective: ObjectiveBreakdown,
    pub status: Status,
}

impl Scored {
    /// Scores a solution whose schedule has already been realized. Partial
    /// route sets are accepted; unrouted nodes must have zero service.
    pub fn assess(instance: &Instance, solution: Solution, allow_waiting: bool) -> Scored {
        let lambda = if allow_waiting { 0.0 } else { WAITING_PENALTY };
        let objective = objective_unchecked(instance, &solution, lambda);
        let status = status_of(instance, &solution, allow_waiting);
        let mut solution = solution;
        solution.schedule.feasible = status.is_feasible();
        Scored {
            solution,
            objective,
            status,
        }
    }

    pub fn total(&self) -> f64 {
        self.objective.total()
    }

    pub fn is_feasible(&self) -> bool {
        self.status.is_feasible()
    }

    /// Scalar used to rank candidates during search; equals the objective
    /// for hard-feasible solutions.
    pub fn search_cost(&self) -> f64 {
        self.total()
            + HARD_PENALTY * self.status.hard_excess()
            + EMPTY_ROUTE_PENALTY * self.status.empty_routes as f64
    }
}

/// Search scalar of a realized solution without building a [`Scored`].
pub(crate) fn cost_of(instance: &Instance, solution: &Solution, allow_waiting: bool) -> f64 {
    let lambda = if allow_waiting { 0.0 } else { WAITING_PENALTY };
    let objective = objective_unchecked(instance, solution, lambda);
    let status = status_of(instance, solution, allow_waiting);
    objective.total()
        + HARD_PENALTY * status.hard_excess()
        + EMPTY_ROUTE_PENALTY * status.empty_routes as f64
}

fn status_of(instance: &Instance, sol: &Solution, allow_waiting: bool) -> Status {
    let p = instance.params();
    let sch = &sol.schedule;
    let horizon_excess = sch
        .route_return
        .iter()
        .map(|&r| (r - p.horizon).max(0.0))
        .sum();
    let used: f64 = sol.tanker_route.iter().map(|&r| sch.refill_qty[r]).sum();
    let late_tanker = sol
        .tanker_route
        .iter()
        .map(|&r| (sch.tanker_arrival[r] - sch.refill_start[r]).max(0.0))
        .sum();
    let total_waiting: f64 = sch.waiting.iter().sum();
    Status {
        horizon_excess,
        tanker_excess: (used - p.tanker_capacity).max(0.0),
        late_tanker,
        empty_routes: sol.routes.iter().filter(|r| r.is_empty()).count(),
        total_waiting,
        infeasible_waiting: !allow_waiting && sch.waiting.iter().any(|&m| m > TOL),
    }
}

impl Solution {
    /// Builds a solution and realizes its schedule. Refill flags are taken
    /// from the tanker route; `waiting` may be empty for no waiting.
    pub fn build(
        instance: &Instance,
        routes: Vec<Vec<usize>>,
        service: Vec<f64>,
        tanker_route: Vec<usize>,
        waiting: Vec<f64>,
    ) -> Solution {
        let mut refill = vec![false; instance.num_nodes() + 1];
        for &r in &tanker_route {
            refill[r] = true;
        }
        Solution::build_with_refills(instance, routes, service, refill, tanker_route, waiting)
    }

    /// Like [`Solution::build`] but with explicit refill flags, which may
    /// disagree with the tanker route (the checker reports that).
    pub fn build_with_refills(
        instance: &Instance,
        routes: Vec<Vec<usize>>,
        service: Vec<f64>,
        refill: Vec<bool>,
        tanker_route: Vec<usize>,
        waiting: Vec<f64>,
    ) -> Solution {
        let n = instance.num_nodes();
        let waiting = if waiting.is_empty() {
            vec![0.0; n + 1]
        } else {
            waiting
        };
        let schedule = realize(instance, &routes, &service, &refill, &tanker_route, waiting);
        Solution {
            routes,
            service,
            refill,
            tanker_route,
            schedule,
        }
    }

    /// Refill nodes as a sorted list.
    pub fn refill_nodes(&self) -> Vec<usize> {
        (0..self.refill.len()).filter(|&i| self.refill[i]).collect()
    }

    /// Directed sprayer arcs, depot included as 0.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in self.routes.iter().filter(|r| !r.is_empty()) {
            let mut prev = 0;
            for &i in r {
                out.push((prev, i));
                prev = i;
            }
            out.push((prev, 0));
        }
        out
    }
}

/// Forward timing pass: sprayers never wait except for the given `m`,
/// the tanker leaves each refill as soon as it is done.
fn realize(
    instance: &Instance,
    routes: &[Vec<usize>],
    service: &[f64],
    refill: &[bool],
    tanker_route: &[usize],
    waiting: Vec<f64>,
) -> Schedule {
    let mut sch = Schedule {
        waiting,
        ..Schedule::default()
    };
    realize_parts(instance, routes, service, refill, tanker_route, &mut sch);
    sch
}

/// Recomputes `solution.schedule` in place from its decisions and the
/// waiting already stored there.
pub(crate) fn realize_into(instance: &Instance, solution: &mut Solution) {
    let Solution {
        routes,
        service,
        refill,
        tanker_route,
        schedule,
    } = solution;
    realize_parts(instance, routes, service, refill, tanker_route, schedule);
}

fn realize_parts(
    instance: &Instance,
    routes: &[Vec<usize>],
    service: &[f64],
    refill: &[bool],
    tanker_route: &[usize],
    sch: &mut Schedule,
) {
    let p = instance.params();
    let n = instance.num_nodes();
    for v in [
        &mut sch.arrival,
        &mut sch.refill_start,
        &mut sch.tanker_arrival,
        &mut sch.sprayer_tank,
        &mut sch.tanker_tank,
        &mut sch.refill_qty,
    ] {
        v.clear();
        v.resize(n + 1, 0.0);
    }
    sch.route_return.clear();
    sch.route_return.resize(routes.len(), 0.0);
    sch.tanker_return = 0.0;
    sch.feasible = false;
    for (k, route) in routes.iter().enumerate() {
        let mut time = 0.0;
        let mut prev = 0;
        let mut level = p.sprayer_capacity;
        for &i in route {
            time += instance.t(prev, i);
            sch.arrival[i] = time;
            sch.sprayer_tank[i] = level;
            time += service[i] + sch.waiting[i];
            level -= p.spray_rate * service[i];
            if refill[i] {
                sch.refill_start[i] = time;
                sch.refill_qty[i] = p.sprayer_capacity - level;
                level = p.sprayer_capacity;
                time += p.refill_time;
            }
            prev = i;
        }
        if !route.is_empty() {
            time += instance.t(prev, 0);
        }
        sch.route_return[k] = time;
    }
    let mut prev = 0;
    let mut clock = 0.0;
    let mut stock = p.tanker_capacity;
    for &r in tanker_route {
        let arrive = clock + instance.t(prev, r) / p.speed_factor;
        sch.tanker_arrival[r] = arrive;
        sch.tanker_tank[r] = stock;
        stock -= sch.refill_qty[r];
        clock = arrive.max(sch.refill_start[r]) + p.refill_time;
        prev = r;
    }
    if !tanker_route.is_empty() {
        sch.tanker_return = clock + instance.t(prev, 0) / p.speed_factor;
    }
}
