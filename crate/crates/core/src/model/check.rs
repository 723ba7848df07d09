use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Instance, Solution, TOL};

/// Constraint groups of the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstraintFamily {
    /// Every field node is visited exactly once by a sprayer.
    Coverage,
    /// K routes, each leaving the depot.
    FleetSize,
    /// The tanker visits exactly the refill nodes, once each.
    TankerRoute,
    /// The tanker reaches a refill node after the refill should start.
    TankerLate,
    /// Waiting is used although it is not allowed.
    NoWaiting,
    /// A sprayer is back at the depot after the horizon.
    Horizon,
    ServiceMin,
    ServiceMax,
    /// A sprayer tank would go below zero.
    SprayerTank,
    /// The tanker runs out of fertilizer.
    TankerCapacity,
    /// Negative or non-finite decision values.
    Domain,
    /// Stored schedule disagrees with the recomputed one.
    ScheduleMismatch,
}

impl fmt::Display for ConstraintFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub family: ConstraintFamily,
    /// Nodes involved; empty for fleet-level violations.
    pub nodes: Vec<usize>,
    pub sprayer: Option<usize>,
    /// How far the constraint is exceeded, in its own unit.
    pub magnitude: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, family: ConstraintFamily) -> bool {
        self.violations.iter().any(|v| v.family == family)
    }

    pub fn families(&self) -> Vec<ConstraintFamily> {
        let mut f: Vec<_> = self.violations.iter().map(|v| v.family).collect();
        f.sort();
        f.dedup();
        f
    }

    fn push(
        &mut self,
        family: ConstraintFamily,
        nodes: Vec<usize>,
        sprayer: Option<usize>,
        magnitude: f64,
        detail: String,
    ) {
        self.violations.push(Violation {
            family,
            nodes,
            sprayer,
            magnitude,
            detail,
        });
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "feasible");
        }
        for v in &self.violations {
            writeln!(f, "{}: {} (by {:.6})", v.family, v.detail, v.magnitude)?;
        }
        Ok(())
    }
}

/// Checks every constraint with waiting forbidden.
pub fn check_feasibility(instance: &Instance, solution: &Solution) -> ViolationReport {
    check_with(instance, solution, false)
}

/// Recomputes times and levels from routes, service times, refill flags,
/// the tanker route and stored waiting, and reports every violated
/// constraint. Independent from the evaluators.
pub fn check_with(
    instance: &Instance,
    solution: &Solution,
    allow_waiting: bool,
) -> ViolationReport {
    use ConstraintFamily::*;
    let p = instance.params();
    let n = instance.num_nodes();
    let mut rep = ViolationReport::default();

    if solution.routes.len() != p.num_sprayers {
        rep.push(
            FleetSize,
            vec![],
            None,
            (solution.routes.len() as f64 - p.num_sprayers as f64).abs(),
            format!(
                "{} routes for {} sprayers",
                solution.routes.len(),
                p.num_sprayers
            ),
        );
    }
    for (k, r) in solution.routes.iter().enumerate() {
        if r.is_empty() {
            rep.push(
                FleetSize,
                vec![],
                Some(k),
                1.0,
                format!("sprayer {k} has an empty route"),
            );
        }
    }
    if solution.service.len() != n + 1 || solution.refill.len() != n + 1 {
        rep.push(
            Coverage,
            vec![],
            None,
            1.0,
            "service or refill vector does not match the node count".into(),
        );
        return rep;
    }
    let mut count = vec![0usize; n + 1];
    let mut broken = false;
    for &i in solution.routes.iter().flatten() {
        if i == 0 || i > n {
            rep.push(Coverage, vec![i], None, 1.0, format!("unknown node {i}"));
            broken = true;
        } else {
            count[i] += 1;
        }
    }
    for i in 1..=n {
        if count[i] != 1 {
            rep.push(
                Coverage,
                vec![i],
                None,
                (count[i] as f64 - 1.0).abs(),
                format!("node {i} visited {} times", count[i]),
            );
            broken = true;
        }
    }
    if broken {
        return rep;
    }

    let waiting: Vec<f64> = if solution.schedule.waiting.len() == n + 1 {
        solution.schedule.waiting.clone()
    } else {
        vec![0.0; n + 1]
    };
    for i in 1..=n {
        let s = solution.service[i];
        let m = waiting[i];
        if !s.is_finite() || !m.is_finite() || m < -TOL {
            rep.push(
                Domain,
                vec![i],
                None,
                m.abs(),
                format!("node {i}: s={s}, m={m}"),
            );
        }
        let applied = p.spray_rate * s;
        let node = instance.node(i);
        if applied < node.q_min - TOL {
            rep.push(
                ServiceMin,
                vec![i],
                None,
                node.q_min - applied,
                format!("node {i} receives {applied:.6} < qMin {}", node.q_min),
            );
        }
        if applied > node.q_max + TOL {
            rep.push(
                ServiceMax,
                vec![i],
                None,
                applied - node.q_max,
                format!("node {i} receives {applied:.6} > qMax {}", node.q_max),
            );
        }
        if !allow_waiting && m > TOL {
            rep.push(
                NoWaiting,
                vec![i],
                None,
                m,
                format!("sprayer waits {m:.6} at node {i}"),
            );
        }
    }

    // tanker route against refill flags
    let mut on_tanker = vec![0usize; n + 1];
    for &r in &solution.tanker_route {
        if r == 0 || r > n {
            rep.push(
                TankerRoute,
                vec![r],
                None,
                1.0,
                format!("tanker visits unknown node {r}"),
            );
            continue;
        }
        on_tanker[r] += 1;
    }
    for i in 1..=n {
        let want = usize::from(solution.refill[i]);
        if on_tanker[i] != want {
            rep.push(
                TankerRoute,
                vec![i],
                None,
                1.0,
                format!(
                    "node {i}: refill flag {} but tanker visits {} times",
                    solution.refill[i], on_tanker[i]
                ),
            );
        }
    }

    // sprayer side: times, tank levels
    let mut arrival = vec![0.0; n + 1];
    let mut level_in = vec![0.0; n + 1];
    let mut theta = vec![f64::NAN; n + 1];
    let mut refilled = vec![0.0; n + 1];
    for (k, route) in solution.routes.iter().enumerate() {
        let mut clock = 0.0;
        let mut at = 0usize;
        let mut tank = p.sprayer_capacity;
        for &i in route {
            clock += instance.location(at).dist(&instance.location(i));
            arrival[i] = clock;
            level_in[i] = tank;
            let s = solution.service[i];
            tank -= p.spray_rate * s;
            if tank < -TOL {
                rep.push(
                    SprayerTank,
                    vec![i],
                    Some(k),
                    -tank,
                    format!("sprayer {k} tank at {tank:.6} after node {i}"),
                );
            }
            clock += s + waiting[i];
            if solution.refill[i] {
                theta[i] = clock;
                refilled[i] = p.sprayer_capacity - tank;
                tank = p.sprayer_capacity;
                clock += p.refill_time;
            }
            at = i;
        }
        if !route.is_empty() {
            clock += instance.location(at).dist(&instance.location(0));
        }
        if clock > p.horizon + TOL {
            rep.push(
                Horizon,
                route.clone(),
                Some(k),
                clock - p.horizon,
                format!("sprayer {k} returns at {clock:.6} > {}", p.horizon),
            );
        }
    }

    // tanker side
    let mut clock = 0.0;
    let mut at = 0usize;
    let mut stock = p.tanker_capacity;
    let mut tanker_arrival = vec![0.0; n + 1];
    for &r in &solution.tanker_route {
        if r == 0 || r > n || !solution.refill[r] {
            continue;
        }
        let arrive = clock + instance.location(at).dist(&instance.location(r)) / p.speed_factor;
        tanker_arrival[r] = arrive;
        if arrive > theta[r] + TOL {
            rep.push(
                TankerLate,
                vec![r],
                None,
                arrive - theta[r],
                format!(
                    "tanker reaches {r} at {arrive:.6}, refill due at {:.6}",
                    theta[r]
                ),
            );
        }
        stock -= refilled[r];
        if stock < -TOL {
            rep.push(
                TankerCapacity,
                vec![r],
                None,
                -stock,
                format!("tanker short by {:.6} at node {r}", -stock),
            );
        }
        clock = arrive.max(theta[r]) + p.refill_time;
        at = r;
    }

    // stored schedule, when present
    let sch = &solution.schedule;
    let present = sch.arrival.len() == n + 1
        && sch.refill_start.len() == n + 1
        && sch.sprayer_tank.len() == n + 1;
    if present {
        for i in 1..=n {
            let mut off = (sch.arrival[i] - arrival[i]).abs();
            off = off.max((sch.sprayer_tank[i] - level_in[i]).abs());
            if solution.refill[i] {
                off = off.max((sch.refill_start[i] - theta[i]).abs());
                if sch.tanker_arrival.len() == n + 1 && on_tanker[i] == 1 {
                    // the tanker may dawdle, but not arrive before it could
                    off = off.max((tanker_arrival[i] - sch.tanker_arrival[i]).max(0.0));
                }
            }
            if off > TOL {
                rep.push(
                    ScheduleMismatch,
                    vec![i],
                    None,
                    off,
                    format!("stored schedule at node {i} differs by {off:.6}"),
                );
            }
        }
    }
    rep
}
