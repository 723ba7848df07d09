//! Optimal service times for fixed routes and refills, checked against a
//! grid search.

use sstrpvst::intensify::{grid_service_oracle, optimize_service_times};
use sstrpvst::io::{generate, GeneratorProfile, SizeClass};

fn main() -> sstrpvst::Result<()> {
    let inst = generate(&GeneratorProfile::new(SizeClass::Tiny, 1, 4).with_nodes(6))?;
    let routes = vec![(1..=6).collect::<Vec<usize>>()];
    for refills in [vec![], vec![3], vec![2, 4]] {
        let lp = optimize_service_times(&inst, &routes, &refills, &refills)?;
        let grid = grid_service_oracle(&inst, &routes, &refills, &refills, 0.01)?;
        match lp {
            Some(s) => println!(
                "refills {refills:?}: service {:.4} (grid {:.4}), total {:.3}",
                s.objective.service_term,
                grid.unwrap_or(f64::NAN),
                s.total()
            ),
            None => println!("refills {refills:?}: infeasible (grid agrees: {})", grid.is_none()),
        }
    }
    Ok(())
}
