//! Greedy insertion against cluster-first construction on a medium instance.

use sstrpvst::construct::{cluster_construct, greedy_construct};
use sstrpvst::io::{generate, GeneratorProfile, SizeClass};

fn main() -> sstrpvst::Result<()> {
    for seed in 0..3 {
        let inst = generate(&GeneratorProfile::new(SizeClass::Medium, 3, seed))?;
        let g = greedy_construct(&inst);
        let c = cluster_construct(&inst);
        println!(
            "seed {seed} nodes {}: greedy {:>9.3} ({} refills), cluster {:>9.3} ({} refills)",
            inst.num_nodes(),
            g.total(),
            g.solution().tanker_route.len(),
            c.total(),
            c.solution().tanker_route.len()
        );
    }
    Ok(())
}
