//! Arc-pool improvement after a short adaptive search.

use std::time::Duration;

use sstrpvst::alns::{run, AlnsConfig};
use sstrpvst::construct::greedy_construct;
use sstrpvst::intensify::{phase3_improve, Phase3Config};
use sstrpvst::io::{generate, GeneratorProfile, SizeClass};

fn main() -> sstrpvst::Result<()> {
    let inst = generate(&GeneratorProfile::new(SizeClass::Small, 2, 21))?;
    let start = greedy_construct(&inst).into_scored();
    let out = run(&inst, start, &AlnsConfig { max_iter: Some(300), seed: 2, ..AlnsConfig::default() });
    let cfg = Phase3Config { time_limit: Duration::from_secs(20), ..Phase3Config::default() };
    let p3 = phase3_improve(&inst, &out.pool, &out.best, &cfg);
    println!(
        "pool {} arcs, search best {:.3}, phase 3 {:.3} (exact {}, {} route sets scored)",
        out.pool.len(),
        out.best.total(),
        p3.best.total(),
        p3.exact,
        p3.evaluated
    );
    Ok(())
}
