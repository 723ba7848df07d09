//! Lower bounds and the per-sprayer service bound for a tiny and a large
//! instance.

use sstrpvst::bounds::{composite_lower_bound, relaxed_exact_bound, service_upper_bound};
use sstrpvst::io::{generate, GeneratorProfile, SizeClass};
use sstrpvst::oracle::OracleCaps;

fn main() -> sstrpvst::Result<()> {
    for profile in [
        GeneratorProfile::new(SizeClass::Tiny, 2, 1).with_nodes(8),
        GeneratorProfile::new(SizeClass::Large, 4, 1),
    ] {
        let inst = generate(&profile)?;
        let relaxed = match relaxed_exact_bound(&inst, &OracleCaps::default()) {
            Ok(b) => format!("{:.3}", b.unwrap_or(f64::INFINITY)),
            Err(e) => format!("n/a ({e})"),
        };
        println!(
            "{} nodes: composite {:.3}, relaxed {relaxed}, s' {:.3}",
            inst.num_nodes(),
            composite_lower_bound(&inst),
            service_upper_bound(&inst)
        );
    }
    Ok(())
}
