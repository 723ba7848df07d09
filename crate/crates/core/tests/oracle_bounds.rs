mod common;

use std::time::Duration;

use common::{params, single_node, t1, tiny};
use proptest::prelude::*;
use sstrpvst::baseline::practice_policy;
use sstrpvst::bounds::{
    composite_lower_bound, gap_percent, relaxed_exact_bound, service_upper_bound,
};
use sstrpvst::model::{check_feasibility, check_with, FleetParams, Instance, Node, Point};
use sstrpvst::oracle::{exact_solve, exact_solve_relaxed, exact_solve_with, OracleCaps};
use sstrpvst::schedule::EvalOptions;
use sstrpvst::Error;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-6
}

#[test]
fn oracle_on_the_two_node_line() {
    let inst = t1();
    let out = exact_solve(&inst, &OracleCaps::default()).unwrap();
    let best = out.best.unwrap();
    assert!(close(best.total(), 1.0));
    assert_eq!(best.solution.refill_nodes(), vec![1]);
    assert!(close(best.solution.service[1], 3.0) && close(best.solution.service[2], 3.0));
    assert!(check_feasibility(&inst, &best.solution).is_feasible());

    let waiting = exact_solve_with(
        &inst,
        &OracleCaps::default(),
        EvalOptions {
            allow_waiting: true,
        },
    )
    .unwrap();
    assert!(close(waiting.objective().unwrap(), 1.0));
}

#[test]
fn oracle_on_a_single_node() {
    let out = exact_solve(&single_node(), &OracleCaps::default()).unwrap();
    let best = out.best.unwrap();
    assert!(close(best.total(), 0.0));
    assert!(close(best.solution.service[1], 2.0));
}

#[test]
fn oracle_proves_infeasibility() {
    let inst = Instance::new(
        Point::new(0.0, 0.0),
        vec![Node {
            id: 1,
            x: 10.0,
            y: 0.0,
            q_min: 2.0,
            q_max: 4.0,
        }],
        FleetParams {
            horizon: 15.0,
            ..params(1)
        },
    )
    .unwrap();
    assert!(exact_solve(&inst, &OracleCaps::default())
        .unwrap()
        .best
        .is_none());
    assert_eq!(service_upper_bound(&inst), 0.0);
}

#[test]
fn oracle_refuses_outside_its_caps() {
    let big = tiny(9, 2, 1);
    assert!(matches!(
        exact_solve(&big, &OracleCaps::default()),
        Err(Error::Refused(_))
    ));
    assert!(matches!(
        exact_solve_relaxed(&big, &OracleCaps::default()),
        Err(Error::Refused(_))
    ));
    let three = tiny(5, 3, 1);
    assert!(matches!(
        exact_solve(&three, &OracleCaps::default()),
        Err(Error::Refused(_))
    ));
    let hurried = OracleCaps {
        time_limit: Duration::ZERO,
        ..OracleCaps::default()
    };
    assert!(matches!(
        exact_solve(&tiny(7, 2, 1), &hurried),
        Err(Error::Refused(_))
    ));
}

#[test]
fn bounds_on_the_fixtures() {
    let inst = t1();
    assert!(close(composite_lower_bound(&inst), -4.0));
    assert!(close(
        relaxed_exact_bound(&inst, &OracleCaps::default())
            .unwrap()
            .unwrap(),
        -1.0
    ));
    assert!(close(service_upper_bound(&inst), 8.0));
    let one = single_node();
    assert!(close(composite_lower_bound(&one), 0.0));
    assert!(close(
        relaxed_exact_bound(&one, &OracleCaps::default())
            .unwrap()
            .unwrap(),
        0.0
    ));
}

#[test]
fn gap_is_relative_to_the_bound() {
    assert!(close(gap_percent(110.0, 100.0), 10.0));
    assert!(close(gap_percent(-90.0, -100.0), 10.0));
    assert_eq!(gap_percent(0.0, 0.0), 0.0);
}

#[test]
fn practice_policy_examples() {
    let inst = t1();
    let p = practice_policy(&inst).unwrap();
    assert!(close(p.total(), 2.6));
    assert_eq!(p.solution.refill_nodes(), vec![1]);
    assert!(check_feasibility(&inst, &p.solution).is_feasible());

    let spread = tiny(4, 4, 3);
    let p = practice_policy(&spread).unwrap();
    assert!(p.solution.routes.iter().all(|r| r.len() == 1));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn bound_sandwich(seed in 0u64..10_000, n in 2usize..7, k in 1usize..3) {
        let inst = tiny(n, k, seed);
        let caps = OracleCaps::default();
        let out = exact_solve(&inst, &caps).unwrap();
        let Some(best) = out.best else { return Ok(()) };
        let opt = best.total();
        prop_assert!(check_feasibility(&inst, &best.solution).is_feasible());
        let comp = composite_lower_bound(&inst);
        let relaxed = relaxed_exact_bound(&inst, &caps).unwrap().unwrap();
        prop_assert!(comp <= relaxed + 1e-9, "composite {} relaxed {}", comp, relaxed);
        prop_assert!(relaxed <= opt + 1e-9, "relaxed {} optimum {}", relaxed, opt);
        let per_sprayer = best
            .solution
            .routes
            .iter()
            .map(|r| r.iter().map(|&i| best.solution.service[i]).sum::<f64>())
            .fold(0.0, f64::max);
        prop_assert!(service_upper_bound(&inst) >= per_sprayer - 1e-9);

        let practice = practice_policy(&inst).unwrap();
        let flagged = !practice.is_feasible();
        prop_assert!(flagged || check_with(&inst, &practice.solution, false).is_feasible());
        if !flagged {
            prop_assert!(opt <= practice.total() + 1e-9);
        }

        let waiting = exact_solve_with(&inst, &caps, EvalOptions { allow_waiting: true }).unwrap();
        prop_assert!(waiting.objective().unwrap() <= opt + 1e-9);
    }
}
