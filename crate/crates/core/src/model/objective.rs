use serde::{Deserialize, Serialize};

use super::{Instance, Solution};
use crate::error::{Error, Result};

/// Penalty per unit of sprayer waiting time.
pub const WAITING_PENALTY: f64 = 10.0;

/// Objective components. The total is travel plus refill time minus
/// service plus the waiting penalty.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveBreakdown {
    pub sprayer_travel: f64,
    pub tanker_travel: f64,
    pub refill_term: f64,
    /// Total service time, entering the objective with a minus sign.
    pub service_term: f64,
    pub waiting_penalty: f64,
}

impl ObjectiveBreakdown {
    pub fn total(&self) -> f64 {
        self.sprayer_travel + self.tanker_travel + self.refill_term - self.service_term
            + self.waiting_penalty
    }
}

/// Objective with the default waiting penalty.
pub fn objective(instance: &Instance, solution: &Solution) -> Result<ObjectiveBreakdown> {
    objective_with(instance, solution, WAITING_PENALTY)
}

/// Objective with an explicit waiting weight (0 when waiting is allowed).
pub fn objective_with(
    instance: &Instance,
    solution: &Solution,
    waiting_weight: f64,
) -> Result<ObjectiveBreakdown> {
    check_partition(instance, solution)?;
    Ok(objective_unchecked(instance, solution, waiting_weight))
}

/// Objective of a possibly partial solution; vectors must have length N+1.
pub(crate) fn objective_unchecked(
    instance: &Instance,
    solution: &Solution,
    waiting_weight: f64,
) -> ObjectiveBreakdown {
    let mut sprayer_travel = 0.0;
    for r in &solution.routes {
        sprayer_travel += path_length(instance, r);
    }
    let tanker_travel = path_length(instance, &solution.tanker_route);
    let refills = solution.refill.iter().filter(|&&d| d).count();
    let service_term = solution.service[1..].iter().sum();
    let waiting: f64 = match solution.schedule.waiting.len() {
        0 => 0.0,
        _ => solution.schedule.waiting[1..].iter().sum(),
    };
    ObjectiveBreakdown {
        sprayer_travel,
        tanker_travel,
        refill_term: instance.params().refill_time * refills as f64,
        service_term,
        waiting_penalty: waiting_weight * waiting,
    }
}

/// Closed depot tour through `stops`; zero for an empty sequence.
pub(crate) fn path_length(instance: &Instance, stops: &[usize]) -> f64 {
    if stops.is_empty() {
        return 0.0;
    }
    let mut len = 0.0;
    let mut prev = 0;
    for &i in stops {
        len += instance.t(prev, i);
        prev = i;
    }
    len + instance.t(prev, 0)
}

pub(crate) fn check_partition(instance: &Instance, solution: &Solution) -> Result<()> {
    let n = instance.num_nodes();
    if solution.routes.len() != instance.num_sprayers() {
        return Err(Error::Structural(format!(
            "{} routes for {} sprayers",
            solution.routes.len(),
            instance.num_sprayers()
        )));
    }
    for (name, len) in [
        ("service", solution.service.len()),
        ("refill", solution.refill.len()),
    ] {
        if len != n + 1 {
            return Err(Error::Structural(format!(
                "{name} vector has length {len}, expected {}",
                n + 1
            )));
        }
    }
    let w = solution.schedule.waiting.len();
    if w != 0 && w != n + 1 {
        return Err(Error::Structural(format!("waiting vector has length {w}")));
    }
    let mut seen = vec![false; n + 1];
    for &i in solution.routes.iter().flatten() {
        if i == 0 || i > n {
            return Err(Error::UnknownNode(i));
        }
        if seen[i] {
            return Err(Error::Structural(format!("node {i} visited twice")));
        }
        seen[i] = true;
    }
    if let Some(i) = (1..=n).find(|&i| !seen[i]) {
        return Err(Error::Structural(format!("node {i} not visited")));
    }
    for &r in &solution.tanker_route {
        if r == 0 || r > n {
            return Err(Error::UnknownNode(r));
        }
    }
    Ok(())
}
