use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FleetParams, Instance, Node, ObjectiveBreakdown, Point, Solution};

pub const INSTANCE_SCHEMA: &str = "sstrpvst/1";
pub const SOLUTION_SCHEMA: &str = "sstrpvst-solution/1";

/// Rounds to 9 significant digits, the precision of every stored number.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeRec {
    id: usize,
    x: f64,
    y: f64,
    #[serde(rename = "qMin")]
    q_min: f64,
    #[serde(rename = "qMax")]
    q_max: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    schema: String,
    depot: Point,
    nodes: Vec<NodeRec>,
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "Qs")]
    qs: f64,
    #[serde(rename = "Qt")]
    qt: f64,
    eta: f64,
    xi: f64,
    beta: f64,
    #[serde(rename = "tMax")]
    t_max: f64,
    rd: f64,
}

pub fn instance_to_json(instance: &Instance) -> String {
    let p = instance.params();
    let d = instance.depot();
    let file = InstanceFile {
        schema: INSTANCE_SCHEMA.into(),
        depot: Point::new(sig9(d.x), sig9(d.y)),
        nodes: instance
            .nodes()
            .iter()
            .map(|n| NodeRec {
                id: n.id,
                x: sig9(n.x),
                y: sig9(n.y),
                q_min: sig9(n.q_min),
                q_max: sig9(n.q_max),
            })
            .collect(),
        k: p.num_sprayers,
        qs: sig9(p.sprayer_capacity),
        qt: sig9(p.tanker_capacity),
        eta: sig9(p.spray_rate),
        xi: sig9(p.refill_time),
        beta: sig9(p.speed_factor),
        t_max: sig9(p.horizon),
        rd: sig9(p.zone_radius),
    };
    serde_json::to_string_pretty(&file).expect("instance serializes")
}

/// Parses an instance document; `origin` names the source in diagnostics.
pub fn instance_from_json(text: &str, origin: &str) -> Result<Instance> {
    let f: InstanceFile = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
    if f.schema != INSTANCE_SCHEMA {
        return Err(Error::invalid(
            "schema",
            format!("expected {INSTANCE_SCHEMA}, found {}", f.schema),
        ));
    }
    Instance::new(
        f.depot,
        f.nodes
            .into_iter()
            .map(|n| Node {
                id: n.id,
                x: n.x,
                y: n.y,
                q_min: n.q_min,
                q_max: n.q_max,
            })
            .collect(),
        FleetParams {
            num_sprayers: f.k,
            sprayer_capacity: f.qs,
            tanker_capacity: f.qt,
            spray_rate: f.eta,
            refill_time: f.xi,
            speed_factor: f.beta,
            horizon: f.t_max,
            zone_radius: f.rd,
        },
    )
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &instance_to_json(instance))
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    instance_from_json(&read(path)?, &path.display().to_string())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    schema: String,
    routes: Vec<Vec<usize>>,
    /// Service time of node i at position i - 1.
    service: Vec<f64>,
    refills: Vec<usize>,
    #[serde(rename = "tankerRoute")]
    tanker_route: Vec<usize>,
    waiting: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    objective: Option<ObjectiveRec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    feasible: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ObjectiveRec {
    #[serde(rename = "sprayerTravel")]
    sprayer_travel: f64,
    #[serde(rename = "tankerTravel")]
    tanker_travel: f64,
    #[serde(rename = "refillTerm")]
    refill_term: f64,
    #[serde(rename = "serviceTerm")]
    service_term: f64,
    #[serde(rename = "waitingPenalty")]
    waiting_penalty: f64,
    total: f64,
}

pub fn solution_to_json(solution: &Solution, objective: Option<&ObjectiveBreakdown>) -> String {
    let file = SolutionFile {
        schema: SOLUTION_SCHEMA.into(),
        routes: solution.routes.clone(),
        service: solution.service.iter().skip(1).map(|&s| sig9(s)).collect(),
        refills: solution.refill_nodes(),
        tanker_route: solution.tanker_route.clone(),
        waiting: solution
            .schedule
            .waiting
            .iter()
            .skip(1)
            .map(|&m| sig9(m))
            .collect(),
        objective: objective.map(|o| ObjectiveRec {
            sprayer_travel: sig9(o.sprayer_travel),
            tanker_travel: sig9(o.tanker_travel),
            refill_term: sig9(o.refill_term),
            service_term: sig9(o.service_term),
            waiting_penalty: sig9(o.waiting_penalty),
            total: sig9(o.total()),
        }),
        feasible: Some(solution.schedule.feasible),
    };
    serde_json::to_string_pretty(&file).expect("solution serializes")
}

/// Parses a solution for `instance` and recomputes its schedule.
pub fn solution_from_json(text: &str, origin: &str, instance: &Instance) -> Result<Solution> {
    let f: SolutionFile = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
    if f.schema != SOLUTION_SCHEMA {
        return Err(Error::invalid(
            "schema",
            format!("expected {SOLUTION_SCHEMA}, found {}", f.schema),
        ));
    }
    let n = instance.num_nodes();
    if f.service.len() != n {
        return Err(Error::invalid(
            "service",
            format!("expected {n} entries, found {}", f.service.len()),
        ));
    }
    if !f.waiting.is_empty() && f.waiting.len() != n {
        return Err(Error::invalid(
            "waiting",
            format!("expected {n} entries, found {}", f.waiting.len()),
        ));
    }
    for &i in f
        .refills
        .iter()
        .chain(&f.tanker_route)
        .chain(f.routes.iter().flatten())
    {
        instance.check_id(i)?;
    }
    let mut service = vec![0.0];
    service.extend(f.service);
    let waiting = if f.waiting.is_empty() {
        vec![]
    } else {
        std::iter::once(0.0).chain(f.waiting).collect()
    };
    let mut refill = vec![false; n + 1];
    for &r in &f.refills {
        refill[r] = true;
    }
    Ok(Solution::build_with_refills(
        instance,
        f.routes,
        service,
        refill,
        f.tanker_route,
        waiting,
    ))
}

pub fn save_solution(
    solution: &Solution,
    objective: Option<&ObjectiveBreakdown>,
    path: impl AsRef<Path>,
) -> Result<()> {
    write(path.as_ref(), &solution_to_json(solution, objective))
}

pub fn load_solution(path: impl AsRef<Path>, instance: &Instance) -> Result<Solution> {
    let path = path.as_ref();
    solution_from_json(&read(path)?, &path.display().to_string(), instance)
}

fn parse_error(origin: &str, e: serde_json::Error) -> Error {
    Error::Parse {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
