use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::config::AlnsConfig;
use crate::model::{Instance, Point, Solution};

/// The eleven removal operators, numbered 1 to 11.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DestroyOp {
    Random,
    Route,
    LongestDistanceService,
    WorstDistance,
    Historical,
    Zone,
    RefillPoints,
    RefillNeighbours,
    KappaNeighbours,
    SubtourBefore,
    SubtourAfter,
}

impl DestroyOp {
    pub const ALL: [DestroyOp; 11] = [
        DestroyOp::Random,
        DestroyOp::Route,
        DestroyOp::LongestDistanceService,
        DestroyOp::WorstDistance,
        DestroyOp::Historical,
        DestroyOp::Zone,
        DestroyOp::RefillPoints,
        DestroyOp::RefillNeighbours,
        DestroyOp::KappaNeighbours,
        DestroyOp::SubtourBefore,
        DestroyOp::SubtourAfter,
    ];

    pub fn id(self) -> usize {
        self as usize + 1
    }

    pub fn from_id(id: usize) -> Option<DestroyOp> {
        id.checked_sub(1)
            .and_then(|q| DestroyOp::ALL.get(q).copied())
    }
}

/// Result of a destroy step.
#[derive(Debug, Clone, PartialEq)]
pub struct Removal {
    /// Surviving nodes in their original order.
    pub routes: Vec<Vec<usize>>,
    /// Removed nodes in removal order.
    pub removed: Vec<usize>,
    /// Operator that produced the removal (differs from the requested one
    /// after a fallback to random removal).
    pub op: DestroyOp,
}

/// Destroy operators together with the per-node history used by the
/// historical-knowledge operator.
#[derive(Debug, Clone)]
pub struct Destroyer<'a> {
    instance: &'a Instance,
    removal_random: (f64, f64),
    removal_longest: (f64, f64),
    kappa: usize,
    best_position_cost: Vec<f64>,
}

impl<'a> Destroyer<'a> {
    pub fn new(instance: &'a Instance, config: &AlnsConfig) -> Self {
        Destroyer {
            instance,
            removal_random: config.removal_random,
            removal_longest: config.removal_longest,
            kappa: config.kappa_destroy,
            best_position_cost: vec![f64::INFINITY; instance.num_nodes() + 1],
        }
    }

    /// Lowest position cost seen so far for each node.
    pub fn history(&self) -> &[f64] {
        &self.best_position_cost
    }

    /// Records the position costs of a visited solution.
    pub fn observe(&mut self, solution: &Solution) {
        let pc = position_costs(self.instance, solution);
        for (best, c) in self.best_position_cost.iter_mut().zip(pc) {
            if c < *best {
                *best = c;
            }
        }
    }

    pub fn destroy<R: Rng + ?Sized>(
        &self,
        op: DestroyOp,
        solution: &Solution,
        rng: &mut R,
    ) -> Removal {
        let removed = match op {
            DestroyOp::Random => self.random(solution, rng),
            DestroyOp::Route => route_removal(solution, rng),
            DestroyOp::LongestDistanceService => self.longest(solution, rng),
            DestroyOp::WorstDistance => self.worst_distance(solution, rng),
            DestroyOp::Historical => self.historical(solution, rng),
            DestroyOp::Zone => {
                let (lo, hi) = bounding_box(self.instance);
                let c = Point::new(
                    lo.x + rng.random::<f64>() * (hi.x - lo.x),
                    lo.y + rng.random::<f64>() * (hi.y - lo.y),
                );
                zone_nodes(
                    self.instance,
                    solution,
                    c,
                    self.instance.params().zone_radius,
                )
            }
            DestroyOp::RefillPoints => refill_neighbours(solution, 0),
            DestroyOp::RefillNeighbours => refill_neighbours(solution, 1),
            DestroyOp::KappaNeighbours => refill_neighbours(solution, self.kappa),
            DestroyOp::SubtourBefore => {
                let picks = pick_half_refills(solution, rng);
                subtour_before(solution, &picks)
            }
            DestroyOp::SubtourAfter => {
                let picks = pick_half_refills(solution, rng);
                subtour_after(solution, &picks)
            }
        };
        if removed.is_empty() && op != DestroyOp::Random {
            return self.destroy(DestroyOp::Random, solution, rng);
        }
        split(solution, removed, op)
    }

    fn count<R: Rng + ?Sized>(&self, range: (f64, f64), rng: &mut R) -> usize {
        let n = self.instance.num_nodes();
        let u = if range.1 > range.0 {
            rng.random_range(range.0..=range.1)
        } else {
            range.0
        };
        ((u * n as f64).ceil() as usize).clamp(1, n)
    }

    fn random<R: Rng + ?Sized>(&self, solution: &Solution, rng: &mut R) -> Vec<usize> {
        let nodes: Vec<usize> = solution.routes.iter().flatten().copied().collect();
        let p = self.count(self.removal_random, rng).min(nodes.len());
        sample(rng, nodes.len(), p)
            .into_iter()
            .map(|q| nodes[q])
            .collect()
    }

    fn longest<R: Rng + ?Sized>(&self, solution: &Solution, rng: &mut R) -> Vec<usize> {
        let p = self.count(self.removal_longest, rng);
        let pc = position_costs(self.instance, solution);
        top_by(solution, p, |i| pc[i])
    }

    fn worst_distance<R: Rng + ?Sized>(&self, solution: &Solution, rng: &mut R) -> Vec<usize> {
        let p = self.count(self.removal_random, rng);
        let mut routes = solution.routes.clone();
        let mut out = Vec::with_capacity(p);
        for _ in 0..p {
            let mut best: Option<(f64, usize, usize, usize)> = None;
            for (k, r) in routes.iter().enumerate() {
                for (q, &i) in r.iter().enumerate() {
                    let prev = if q == 0 { 0 } else { r[q - 1] };
                    let next = r.get(q + 1).copied().unwrap_or(0);
                    let d = self.instance.t(prev, i) + self.instance.t(i, next);
                    if best.is_none_or(|(bd, bi, _, _)| d > bd || (d == bd && i < bi)) {
                        best = Some((d, i, k, q));
                    }
                }
            }
            let Some((_, i, k, q)) = best else { break };
            routes[k].remove(q);
            out.push(i);
        }
        out
    }

    fn historical<R: Rng + ?Sized>(&self, solution: &Solution, rng: &mut R) -> Vec<usize> {
        let p = self.count(self.removal_random, rng);
        let pc = position_costs(self.instance, solution);
        let hist = &self.best_position_cost;
        top_by(solution, p, |i| {
            if hist[i].is_finite() {
                pc[i] - hist[i]
            } else {
                0.0
            }
        })
    }
}

/// Position cost t(prev,i) + t(i,next) - s_i of every routed node.
pub fn position_costs(instance: &Instance, solution: &Solution) -> Vec<f64> {
    let mut pc = vec![f64::INFINITY; instance.num_nodes() + 1];
    for r in &solution.routes {
        for (q, &i) in r.iter().enumerate() {
            let prev = if q == 0 { 0 } else { r[q - 1] };
            let next = r.get(q + 1).copied().unwrap_or(0);
            pc[i] = instance.t(prev, i) + instance.t(i, next) - solution.service[i];
        }
    }
    pc
}

/// `p` routed nodes with the largest key, ties to the lower id.
fn top_by(solution: &Solution, p: usize, key: impl Fn(usize) -> f64) -> Vec<usize> {
    let mut nodes: Vec<usize> = solution.routes.iter().flatten().copied().collect();
    nodes.sort_by(|&a, &b| key(b).total_cmp(&key(a)).then(a.cmp(&b)));
    nodes.truncate(p);
    nodes
}

fn route_removal<R: Rng + ?Sized>(solution: &Solution, rng: &mut R) -> Vec<usize> {
    let busy: Vec<usize> = (0..solution.routes.len())
        .filter(|&k| !solution.routes[k].is_empty())
        .collect();
    if busy.is_empty() {
        return Vec::new();
    }
    let k = busy[rng.random_range(0..busy.len())];
    solution.routes[k].clone()
}

fn bounding_box(instance: &Instance) -> (Point, Point) {
    let d = instance.depot();
    let mut lo = d;
    let mut hi = d;
    for n in instance.nodes() {
        lo.x = lo.x.min(n.x);
        lo.y = lo.y.min(n.y);
        hi.x = hi.x.max(n.x);
        hi.y = hi.y.max(n.y);
    }
    (lo, hi)
}

/// Routed nodes within `radius` of `center`, ascending id.
pub fn zone_nodes(
    instance: &Instance,
    solution: &Solution,
    center: Point,
    radius: f64,
) -> Vec<usize> {
    let mut out: Vec<usize> = solution
        .routes
        .iter()
        .flatten()
        .copied()
        .filter(|&i| instance.location(i).dist(&center) <= radius)
        .collect();
    out.sort_unstable();
    out
}

/// Refill nodes and up to `kappa` route neighbours on each side.
pub fn refill_neighbours(solution: &Solution, kappa: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for r in &solution.routes {
        for (q, &i) in r.iter().enumerate() {
            if !solution.refill[i] {
                continue;
            }
            let lo = q.saturating_sub(kappa);
            let hi = (q + kappa).min(r.len() - 1);
            for &j in &r[lo..=hi] {
                if !out.contains(&j) {
                    out.push(j);
                }
            }
        }
    }
    out
}

/// Half the refill nodes (at least one), drawn without replacement.
fn pick_half_refills<R: Rng + ?Sized>(solution: &Solution, rng: &mut R) -> Vec<usize> {
    let refills: Vec<usize> = solution
        .routes
        .iter()
        .flatten()
        .copied()
        .filter(|&i| solution.refill[i])
        .collect();
    if refills.is_empty() {
        return refills;
    }
    let m = (refills.len() / 2).max(1);
    sample(rng, refills.len(), m)
        .into_iter()
        .map(|q| refills[q])
        .collect()
}

/// Each picked refill with the nodes since the previous refill or the depot.
pub fn subtour_before(solution: &Solution, picks: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for &r in picks {
        for route in &solution.routes {
            if let Some(q) = route.iter().position(|&i| i == r) {
                let start = route[..q]
                    .iter()
                    .rposition(|&i| solution.refill[i])
                    .map_or(0, |s| s + 1);
                for &j in &route[start..=q] {
                    if !out.contains(&j) {
                        out.push(j);
                    }
                }
            }
        }
    }
    out
}

/// Each picked refill with the nodes up to the next refill or the depot.
pub fn subtour_after(solution: &Solution, picks: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for &r in picks {
        for route in &solution.routes {
            if let Some(q) = route.iter().position(|&i| i == r) {
                let end = route[q + 1..]
                    .iter()
                    .position(|&i| solution.refill[i])
                    .map_or(route.len(), |e| q + 1 + e);
                for &j in &route[q..end] {
                    if !out.contains(&j) {
                        out.push(j);
                    }
                }
            }
        }
    }
    out
}

fn split(solution: &Solution, removed: Vec<usize>, op: DestroyOp) -> Removal {
    let mut gone = vec![false; solution.service.len()];
    for &i in &removed {
        gone[i] = true;
    }
    let routes = solution
        .routes
        .iter()
        .map(|r| r.iter().copied().filter(|&i| !gone[i]).collect())
        .collect();
    Removal {
        routes,
        removed,
        op,
    }
}
