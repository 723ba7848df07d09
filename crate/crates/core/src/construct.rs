//! Initial solutions: cheapest insertion and cluster-first route-second.

use crate::error::{Error, Result};
use crate::insertion::{insert_all, Rule};
use crate::model::{Instance, Point};
use crate::schedule::{search_eval, AlphaConfig, EvalOptions, EvalResult};

const HELD_KARP_LIMIT: usize = 13;

/// Depot-anchored tour through `nodes`, depot excluded from the result.
/// Exact for up to 13 nodes, nearest neighbour plus 2-opt above. Of the two
/// directions the lexicographically smaller one is returned.
pub fn tsp_route(instance: &Instance, nodes: &[usize]) -> Result<Vec<usize>> {
    if nodes.is_empty() {
        return Err(Error::InvalidInput(
            "tsp_route needs at least one node".into(),
        ));
    }
    for &i in nodes {
        instance.check_id(i)?;
    }
    let mut tour = if nodes.len() <= HELD_KARP_LIMIT {
        held_karp(instance, nodes)
    } else {
        let mut tour = nearest_neighbour(instance, nodes);
        two_opt(instance, &mut tour);
        tour
    };
    if tour.last() < tour.first() {
        tour.reverse();
    }
    Ok(tour)
}

/// Closed tour length from and back to the depot.
pub fn tour_length(instance: &Instance, tour: &[usize]) -> f64 {
    crate::model::objective::path_length(instance, tour)
}

/// Shortest closed depot tour through every subset of the nodes, indexed by
/// bit mask (bit b is node b + 1).
pub(crate) fn held_karp_table(inst: &Instance) -> Vec<f64> {
    let m = inst.num_nodes();
    let full = 1usize << m;
    let mut dp = vec![f64::INFINITY; full * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = inst.t(0, j + 1);
    }
    let mut tours = vec![0.0; full];
    for mask in 1..full {
        let mut best = f64::INFINITY;
        for j in 0..m {
            let cur = dp[mask * m + j];
            if mask & (1 << j) == 0 || !cur.is_finite() {
                continue;
            }
            best = best.min(cur + inst.t(j + 1, 0));
            for nxt in 0..m {
                if mask & (1 << nxt) == 0 {
                    let slot = &mut dp[(mask | 1 << nxt) * m + nxt];
                    *slot = slot.min(cur + inst.t(j + 1, nxt + 1));
                }
            }
        }
        tours[mask] = best;
    }
    tours
}

pub(crate) fn held_karp(inst: &Instance, nodes: &[usize]) -> Vec<usize> {
    let m = nodes.len();
    let full = 1usize << m;
    let mut dp = vec![f64::INFINITY; full * m];
    let mut parent = vec![usize::MAX; full * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = inst.t(0, nodes[j]);
    }
    for mask in 1..full {
        for j in 0..m {
            let cur = dp[mask * m + j];
            if mask & (1 << j) == 0 || !cur.is_finite() {
                continue;
            }
            for nxt in 0..m {
                if mask & (1 << nxt) != 0 {
                    continue;
                }
                let nm = mask | (1 << nxt);
                let c = cur + inst.t(nodes[j], nodes[nxt]);
                if c < dp[nm * m + nxt] {
                    dp[nm * m + nxt] = c;
                    parent[nm * m + nxt] = j;
                }
            }
        }
    }
    let last_mask = full - 1;
    let mut end = 0;
    let mut best = f64::INFINITY;
    for j in 0..m {
        let c = dp[last_mask * m + j] + inst.t(nodes[j], 0);
        if c < best {
            best = c;
            end = j;
        }
    }
    let mut tour = Vec::with_capacity(m);
    let mut mask = last_mask;
    let mut j = end;
    loop {
        tour.push(nodes[j]);
        let pj = parent[mask * m + j];
        mask &= !(1 << j);
        if pj == usize::MAX {
            break;
        }
        j = pj;
    }
    tour.reverse();
    tour
}

pub(crate) fn nearest_neighbour(inst: &Instance, nodes: &[usize]) -> Vec<usize> {
    let mut left: Vec<usize> = nodes.to_vec();
    left.sort_unstable();
    let mut tour = Vec::with_capacity(left.len());
    let mut at = 0;
    while !left.is_empty() {
        let mut bi = 0;
        for q in 1..left.len() {
            if inst.t(at, left[q]) < inst.t(at, left[bi]) {
                bi = q;
            }
        }
        at = left.remove(bi);
        tour.push(at);
    }
    tour
}

/// First-improvement 2-opt on the closed depot tour.
pub(crate) fn two_opt(inst: &Instance, tour: &mut [usize]) {
    let n = tour.len();
    if n < 3 {
        return;
    }
    let at = |t: &[usize], i: isize| {
        if i < 0 || i as usize >= n {
            0
        } else {
            t[i as usize]
        }
    };
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..n - 1 {
            for j in i + 1..n {
                let a = at(tour, i as isize - 1);
                let b = tour[i];
                let c = tour[j];
                let d = at(tour, j as isize + 1);
                let delta = inst.t(a, c) + inst.t(b, d) - inst.t(a, b) - inst.t(c, d);
                if delta < -1e-10 {
                    tour[i..=j].reverse();
                    improved = true;
                }
            }
        }
    }
}

/// Cheapest insertion from K empty routes.
pub fn greedy_construct(instance: &Instance) -> EvalResult {
    greedy_construct_with(instance, &AlphaConfig::default(), EvalOptions::default())
}

pub fn greedy_construct_with(
    instance: &Instance,
    alpha: &AlphaConfig,
    opts: EvalOptions,
) -> EvalResult {
    let routes = vec![Vec::new(); instance.num_sprayers()];
    let pending: Vec<usize> = (1..=instance.num_nodes()).collect();
    insert_all(instance, routes, pending, Rule::Greedy, alpha, opts, None).1
}

/// k-means clusters (farthest-first seeds), one tour per cluster, then
/// single-node moves off the busiest route while the horizon is violated.
pub fn cluster_construct(instance: &Instance) -> EvalResult {
    cluster_construct_with(instance, &AlphaConfig::default(), EvalOptions::default())
}

pub fn cluster_construct_with(
    instance: &Instance,
    alpha: &AlphaConfig,
    opts: EvalOptions,
) -> EvalResult {
    let k = instance.num_sprayers();
    let mut clusters = kmeans(instance, k);
    let tour = |c: &Vec<usize>| {
        if c.is_empty() {
            Vec::new()
        } else {
            tsp_route(instance, c).expect("cluster nodes are valid")
        }
    };
    let mut routes: Vec<Vec<usize>> = clusters.iter().map(tour).collect();
    let mut eval = search_eval(instance, &routes, alpha, opts);
    for _ in 0..instance.num_nodes() {
        if eval.scored.status.horizon_excess <= 0.0 || k < 2 {
            break;
        }
        let ret = &eval.scored.solution.schedule.route_return;
        let busy = (0..k)
            .max_by(|&a, &b| ret[a].total_cmp(&ret[b]).then(b.cmp(&a)))
            .unwrap();
        let idle = (0..k)
            .min_by(|&a, &b| ret[a].total_cmp(&ret[b]).then(a.cmp(&b)))
            .unwrap();
        if busy == idle || clusters[busy].len() <= 1 {
            break;
        }
        let target = centroid(instance, &clusters[idle]);
        let (pos, _) = clusters[busy]
            .iter()
            .enumerate()
            .map(|(q, &i)| (q, instance.location(i).dist(&target)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let v = clusters[busy].remove(pos);
        clusters[idle].push(v);
        routes[busy] = tour(&clusters[busy]);
        routes[idle] = tour(&clusters[idle]);
        eval = search_eval(instance, &routes, alpha, opts);
    }
    eval
}

fn centroid(inst: &Instance, nodes: &[usize]) -> Point {
    if nodes.is_empty() {
        return inst.depot();
    }
    let (sx, sy) = nodes.iter().fold((0.0, 0.0), |(x, y), &i| {
        let p = inst.location(i);
        (x + p.x, y + p.y)
    });
    Point::new(sx / nodes.len() as f64, sy / nodes.len() as f64)
}

/// Lloyd iterations from farthest-first seeds. Deterministic.
pub(crate) fn kmeans(inst: &Instance, k: usize) -> Vec<Vec<usize>> {
    let n = inst.num_nodes();
    let pts: Vec<Point> = (1..=n).map(|i| inst.location(i)).collect();
    let mut seeds: Vec<usize> = Vec::with_capacity(k);
    let far = (0..n)
        .max_by(|&a, &b| {
            pts[a]
                .dist(&inst.depot())
                .total_cmp(&pts[b].dist(&inst.depot()))
                .then(b.cmp(&a))
        })
        .unwrap();
    seeds.push(far);
    while seeds.len() < k.min(n) {
        let next = (0..n)
            .filter(|q| !seeds.contains(q))
            .max_by(|&a, &b| {
                let da = seeds
                    .iter()
                    .map(|&s| pts[a].dist(&pts[s]))
                    .fold(f64::INFINITY, f64::min);
                let db = seeds
                    .iter()
                    .map(|&s| pts[b].dist(&pts[s]))
                    .fold(f64::INFINITY, f64::min);
                da.total_cmp(&db).then(b.cmp(&a))
            })
            .unwrap();
        seeds.push(next);
    }
    let mut centers: Vec<Point> = seeds.iter().map(|&s| pts[s]).collect();
    while centers.len() < k {
        centers.push(inst.depot());
    }
    let mut assign = vec![usize::MAX; n];
    for _ in 0..50 {
        let mut changed = false;
        for q in 0..n {
            let c = (0..k)
                .min_by(|&a, &b| {
                    pts[q]
                        .dist(&centers[a])
                        .total_cmp(&pts[q].dist(&centers[b]))
                        .then(a.cmp(&b))
                })
                .unwrap();
            if assign[q] != c {
                assign[q] = c;
                changed = true;
            }
        }
        // an empty cluster takes the point farthest from its centre
        for c in 0..k.min(n) {
            if !assign.contains(&c) {
                let q = (0..n)
                    .filter(|&q| assign.iter().filter(|&&a| a == assign[q]).count() > 1)
                    .max_by(|&a, &b| {
                        pts[a]
                            .dist(&centers[assign[a]])
                            .total_cmp(&pts[b].dist(&centers[assign[b]]))
                            .then(b.cmp(&a))
                    })
                    .unwrap();
                assign[q] = c;
                changed = true;
            }
        }
        for (c, center) in centers.iter_mut().enumerate() {
            let members: Vec<usize> = (0..n).filter(|&q| assign[q] == c).map(|q| q + 1).collect();
            if !members.is_empty() {
                *center = centroid(inst, &members);
            }
        }
        if !changed {
            break;
        }
    }
    (0..k)
        .map(|c| (0..n).filter(|&q| assign[q] == c).map(|q| q + 1).collect())
        .collect()
}
