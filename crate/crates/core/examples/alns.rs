//! Adaptive large neighbourhood search from the greedy construction, with
//! the final operator weights.

use sstrpvst::alns::{run, AlnsConfig, DestroyOp, LocalSearchStrategy};
use sstrpvst::construct::greedy_construct;
use sstrpvst::io::{generate, GeneratorProfile, SizeClass};

fn main() -> sstrpvst::Result<()> {
    let inst = generate(&GeneratorProfile::new(SizeClass::Small, 2, 11))?;
    let start = greedy_construct(&inst).into_scored();
    let cfg = AlnsConfig {
        max_iter: Some(1000),
        seed: 7,
        local_search: LocalSearchStrategy::Hybrid,
        ..AlnsConfig::default()
    };
    cfg.validate()?;
    let out = run(&inst, start.clone(), &cfg);
    println!("start {:.3} -> best {:.3}", start.total(), out.best.total());
    for op in DestroyOp::ALL {
        let s = &out.stats.ops[op.id() - 1];
        println!("{:>2} {:<24} weight {:.3} used {:>4} new bests {}", op.id(), format!("{op:?}"), s.weight, s.uses, s.new_bests);
    }
    let accepted = out.trace.iter().filter(|r| r.accepted).count();
    println!("{accepted}/{} moves accepted, pool of {} arcs", out.trace.len(), out.pool.len());
    Ok(())
}
