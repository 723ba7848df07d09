//! Writes a few random instances of each size class to a temp directory and
//! reads one back.

use sstrpvst::io::{generate, load_instance, save_instance, GeneratorProfile, SizeClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("sstrpvst-instances");
    std::fs::create_dir_all(&dir)?;
    for class in [SizeClass::Tiny, SizeClass::Small, SizeClass::Medium, SizeClass::Large] {
        for seed in 0..2 {
            let inst = generate(&GeneratorProfile::new(class, 2, seed))?;
            let path = dir.join(format!("{class:?}-{seed}.json").to_lowercase());
            save_instance(&inst, &path)?;
            let total_q: f64 = inst.nodes().iter().map(|n| n.q_min).sum();
            println!("{} nodes={:>2} sum qMin={:>6.1}", path.display(), inst.num_nodes(), total_q);
        }
    }
    let back = load_instance(dir.join("small-0.json"))?;
    assert_eq!(back, generate(&GeneratorProfile::new(SizeClass::Small, 2, 0))?);
    println!("round trip ok");
    Ok(())
}
