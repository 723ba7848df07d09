//! Exact refill re-optimization around the current refill points, with
//! kappa 0 and kappa 1.

use sstrpvst::construct::greedy_construct;
use sstrpvst::intensify::{candidate_set, local_search, SearchBudget};
use sstrpvst::io::{generate, GeneratorProfile, SizeClass};

fn main() -> sstrpvst::Result<()> {
    let inst = generate(&GeneratorProfile::new(SizeClass::Small, 2, 5))?;
    let start = greedy_construct(&inst).into_scored();
    println!("start {:.3}, refills {:?}", start.total(), start.solution.tanker_route);
    for kappa in [0, 1] {
        let cand = candidate_set(&start.solution, kappa);
        let out = local_search(&inst, &start, kappa, SearchBudget::default());
        println!(
            "kappa {kappa}: {} candidates, {:.3} after {} nodes, refills {:?}",
            cand.nodes.len(),
            out.scored.total(),
            out.nodes,
            out.scored.solution.tanker_route
        );
    }
    Ok(())
}
