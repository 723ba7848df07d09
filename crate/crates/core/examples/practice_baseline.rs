//! The round-robin practice policy, the waiting-allowed variant and the
//! matheuristic side by side.

use sstrpvst::baseline::{practice_policy, waiting_allowed_solve};
use sstrpvst::io::{generate, GeneratorProfile, SizeClass};
use sstrpvst::matheuristic::{solve, SolverConfig};

fn main() -> sstrpvst::Result<()> {
    let inst = generate(&GeneratorProfile::new(SizeClass::Small, 3, 4))?;
    let cfg = SolverConfig { iterations: Some(300), ..SolverConfig::default() };
    let practice = practice_policy(&inst)?;
    let waiting = waiting_allowed_solve(&inst, &cfg)?;
    let ours = solve(&inst, &cfg)?;
    for (name, s) in [("practice", &practice), ("waiting allowed", &waiting.best), ("matheuristic", &ours.best)] {
        println!(
            "{name:<16} total {:>9.3} sprayer travel {:>8.3} waiting {:>6.3} feasible {}",
            s.total(),
            s.objective.sprayer_travel,
            s.solution.schedule.waiting.iter().sum::<f64>(),
            s.is_feasible()
        );
    }
    Ok(())
}
