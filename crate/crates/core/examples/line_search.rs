//! Schedules the greedy routes at each tank fraction, then lets the line
//! search pick.

use sstrpvst::construct::greedy_construct;
use sstrpvst::io::{generate, GeneratorProfile, SizeClass};
use sstrpvst::schedule::{evaluate_at_alpha, line_search, AlphaConfig};

fn main() -> sstrpvst::Result<()> {
    let inst = generate(&GeneratorProfile::new(SizeClass::Small, 2, 3))?;
    let routes = greedy_construct(&inst).solution().routes.clone();

    for &alpha in AlphaConfig::default().grid() {
        let r = evaluate_at_alpha(&inst, &routes, alpha)?;
        println!(
            "alpha {alpha:.2}: total {:>8.3} refills {:?} feasible {}",
            r.total(),
            r.solution().tanker_route,
            r.is_feasible()
        );
    }
    let best = line_search(&inst, &routes, &AlphaConfig::default())?;
    println!("line search picks alpha {:.2}, total {:.3}", best.alpha, best.total());
    Ok(())
}
