//! Exact optimum of a tiny instance next to the matheuristic's answer.

use sstrpvst::io::{generate, GeneratorProfile, SizeClass};
use sstrpvst::matheuristic::{solve, SolverConfig};
use sstrpvst::oracle::{exact_solve, OracleCaps};

fn main() -> sstrpvst::Result<()> {
    let inst = generate(&GeneratorProfile::new(SizeClass::Tiny, 2, 9).with_nodes(7))?;
    let exact = exact_solve(&inst, &OracleCaps::default())?;
    let heur = solve(&inst, &SolverConfig::default())?;
    match exact.best {
        Some(opt) => println!(
            "optimum {:.4} over {} route sets in {:?}; routes {:?} refills {:?}",
            opt.total(),
            exact.route_sets,
            exact.elapsed,
            opt.solution.routes,
            opt.solution.tanker_route
        ),
        None => println!("no feasible solution exists"),
    }
    println!("matheuristic {:.4}", heur.best.total());
    Ok(())
}
