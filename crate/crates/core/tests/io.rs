mod common;

use common::{t1, tiny};
use sstrpvst::baseline::practice_policy;
use sstrpvst::io::{
    generate, load_instance, load_solution, save_instance, save_solution, write_results,
    GeneratorProfile, RunRecord, SizeClass,
};
use sstrpvst::model::check_feasibility;
use sstrpvst::oracle::{exact_solve, OracleCaps};

#[test]
fn generation_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let p = GeneratorProfile::new(SizeClass::Large, 4, 77);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    save_instance(&generate(&p).unwrap(), &a).unwrap();
    save_instance(&generate(&p).unwrap(), &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let inst = load_instance(&a).unwrap();
    assert!(inst.num_nodes() > 40);
    assert_eq!(inst, generate(&p).unwrap());
}

#[test]
fn solution_files_round_trip() {
    let inst = t1();
    let best = exact_solve(&inst, &OracleCaps::default())
        .unwrap()
        .best
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.json");
    save_solution(&best.solution, Some(&best.objective), &path).unwrap();
    let back = load_solution(&path, &inst).unwrap();
    assert_eq!(back.routes, best.solution.routes);
    assert_eq!(back.tanker_route, best.solution.tanker_route);
    assert!(check_feasibility(&inst, &back).is_feasible());
}

#[test]
fn results_table() {
    let inst = tiny(6, 2, 1);
    let scored = practice_policy(&inst).unwrap();
    let rec = RunRecord::from_scored("i", 3, "practice", &inst, &scored, Some(-10.0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    write_results(std::slice::from_ref(&rec), &path).unwrap();
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let headers = reader.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    // one record: every aggregate row repeats its numbers
    for agg in &rows[1..] {
        for name in [
            "objective",
            "gapPercent",
            "lowerBound",
            "servicePerSprayer",
            "routingPerSprayer",
        ] {
            assert_eq!(agg[col(name)], rows[0][col(name)], "{name}");
        }
    }
    let z: f64 = rows[0][col("objective")].parse().unwrap();
    let lb: f64 = rows[0][col("lowerBound")].parse().unwrap();
    let gap: f64 = rows[0][col("gapPercent")].parse().unwrap();
    assert!(((z - lb) / lb.abs() * 100.0 - gap).abs() < 1e-9 * gap.abs().max(1.0) * 10.0);
}
