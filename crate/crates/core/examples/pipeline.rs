//! Full solve of a small instance: timings, the results row, and the
//! solution and trace files.

use std::time::Duration;

use sstrpvst::bounds::composite_lower_bound;
use sstrpvst::io::{generate, save_solution, write_results, write_trace, GeneratorProfile, RunRecord, SizeClass};
use sstrpvst::matheuristic::{solve, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = generate(&GeneratorProfile::new(SizeClass::Small, 2, 1))?;
    let cfg = SolverConfig {
        seed: 3,
        iterations: Some(500),
        phase3_time: Duration::from_secs(20),
        ..SolverConfig::default()
    };
    let out = solve(&inst, &cfg)?;
    println!(
        "construction {:.3} -> search {:.3} -> phase 3 {:.3}",
        out.construction.total(),
        out.alns_best.total(),
        out.best.total()
    );
    println!("{:?}", out.timings);

    let dir = std::env::temp_dir().join("sstrpvst-pipeline");
    std::fs::create_dir_all(&dir)?;
    save_solution(&out.best.solution, Some(&out.best.objective), dir.join("solution.json"))?;
    write_trace(&out.trace, dir.join("trace.csv"))?;
    let mut rec = RunRecord::from_scored("small-1", 3, "matheuristic", &inst, &out.best, Some(composite_lower_bound(&inst)));
    rec.total_secs = out.timings.total.as_secs_f64();
    write_results(&[rec], dir.join("results.csv"))?;
    println!("wrote {}", dir.display());
    Ok(())
}
