//! Hand-built solutions for a two-node line run through the checker.

use sstrpvst::model::{check_feasibility, objective, FleetParams, Instance, Node, Point, Solution};

fn line() -> sstrpvst::Result<Instance> {
    let node = |id, x| Node { id, x, y: 0.0, q_min: 4.0, q_max: 8.0 };
    Instance::new(
        Point::new(0.0, 0.0),
        vec![node(1, 1.0), node(2, 2.0)],
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
}

fn main() -> sstrpvst::Result<()> {
    let inst = line()?;
    // refill after node 1: both nodes get three time units
    let good = Solution::build(&inst, vec![vec![1, 2]], vec![0.0, 3.0, 3.0], vec![1], vec![]);
    println!("with refill: {}", check_feasibility(&inst, &good));
    println!("objective {:?}", objective(&inst, &good)?);

    // no refill: twelve units of fertilizer do not fit a six-unit tank
    let bad = Solution::build(&inst, vec![vec![1, 2]], vec![0.0, 3.0, 3.0], vec![], vec![]);
    let report = check_feasibility(&inst, &bad);
    println!("without refill:\n{report}");
    Ok(())
}
