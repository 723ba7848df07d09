#![allow(dead_code)]

use sstrpvst::io::{generate, GeneratorProfile, SizeClass};
use sstrpvst::model::{FleetParams, Instance, Node, Point, Solution};

pub fn params(k: usize) -> FleetParams {
    FleetParams {
        num_sprayers: k,
        sprayer_capacity: 6.0,
        tanker_capacity: 60.0,
        spray_rate: 2.0,
        refill_time: 1.0,
        speed_factor: 2.0,
        horizon: 100.0,
        zone_radius: 1.0,
    }
}

fn node(id: usize, x: f64, y: f64, q_min: f64, q_max: f64) -> Node {
    Node {
        id,
        x,
        y,
        q_min,
        q_max,
    }
}

/// Two nodes on a line, one sprayer, a tank too small for both.
pub fn t1() -> Instance {
    Instance::new(
        Point::new(0.0, 0.0),
        vec![node(1, 1.0, 0.0, 4.0, 8.0), node(2, 2.0, 0.0, 4.0, 8.0)],
        params(1),
    )
    .unwrap()
}

pub fn single_node() -> Instance {
    Instance::new(
        Point::new(0.0, 0.0),
        vec![node(1, 1.0, 0.0, 2.0, 4.0)],
        params(1),
    )
    .unwrap()
}

pub fn tiny(n: usize, k: usize, seed: u64) -> Instance {
    generate(&GeneratorProfile::new(SizeClass::Tiny, k, seed).with_nodes(n)).unwrap()
}

/// 25 nodes with 7, 17, 22 and 23 packed around (100.5, 100.5) and the
/// rest spread over [0, 60]^2.
pub fn figure_instance(k: usize) -> Instance {
    let cluster = [
        (7, 100.0, 100.0),
        (17, 101.0, 100.0),
        (22, 100.0, 101.0),
        (23, 101.0, 101.0),
    ];
    let nodes = (1..=25)
        .map(|id| match cluster.iter().find(|c| c.0 == id) {
            Some(&(_, x, y)) => node(id, x, y, 2.0, 5.0),
            None => node(
                id,
                ((id * 7) % 13) as f64 * 5.0,
                ((id * 11) % 17) as f64 * 3.5,
                2.0,
                5.0,
            ),
        })
        .collect();
    Instance::new(
        Point::new(0.0, 0.0),
        nodes,
        FleetParams {
            num_sprayers: k,
            sprayer_capacity: 15.0,
            tanker_capacity: 150.0,
            spray_rate: 2.0,
            refill_time: 3.0,
            speed_factor: 2.0,
            horizon: 480.0,
            zone_radius: 4.0,
        },
    )
    .unwrap()
}

fn with_refills(inst: &Instance, routes: Vec<Vec<usize>>, refills: &[usize]) -> Solution {
    let service = (0..=inst.num_nodes())
        .map(|i| if i == 0 { 0.0 } else { inst.min_service(i) })
        .collect();
    Solution::build(inst, routes, service, refills.to_vec(), vec![])
}

/// The two-sprayer example solution used to illustrate the destroy
/// operators.
pub fn figure3() -> (Instance, Solution) {
    let inst = figure_instance(2);
    let routes = vec![
        vec![16, 18, 19, 3, 20, 13, 5, 14, 9, 2, 11, 24, 4, 10],
        vec![12, 23, 22, 7, 17, 21, 15, 25, 1, 8, 6],
    ];
    let sol = with_refills(&inst, routes, &[3, 7, 9, 1, 4]);
    (inst, sol)
}

/// The three-sprayer example solution used to illustrate candidate sets.
pub fn figure5() -> (Instance, Solution) {
    let inst = figure_instance(3);
    let routes = vec![
        vec![20, 5, 9, 2, 12, 4, 25, 17],
        vec![16, 19, 8, 14, 7, 24, 22, 21],
        vec![11, 3, 10, 6, 13, 1, 15, 18, 23],
    ];
    let sol = with_refills(&inst, routes, &[3, 9, 7, 1, 4]);
    (inst, sol)
}

pub fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}
