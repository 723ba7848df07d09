use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use sstrpvst::alns::LocalSearchStrategy;
use sstrpvst::baseline::practice_policy;
use sstrpvst::bounds::{composite_lower_bound, relaxed_exact_bound, service_upper_bound};
use sstrpvst::io::{
    generate, load_instance, load_solution, save_instance, save_solution, write_results,
    write_trace, GeneratorProfile, RunRecord, SizeClass,
};
use sstrpvst::matheuristic::{solve, SolveOutcome, SolverConfig};
use sstrpvst::model::{check_with, objective_with, Instance, Scored, WAITING_PENALTY};
use sstrpvst::oracle::{exact_solve_with, OracleCaps};
use sstrpvst::schedule::EvalOptions;
use sstrpvst::Error;

#[derive(Parser)]
#[command(
    name = "sstrpvst",
    about = "Sprayer and tanker routing with variable service time"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Tiny,
    Small,
    Medium,
    Large,
}

impl From<Profile> for SizeClass {
    fn from(p: Profile) -> Self {
        match p {
            Profile::Tiny => SizeClass::Tiny,
            Profile::Small => SizeClass::Small,
            Profile::Medium => SizeClass::Medium,
            Profile::Large => SizeClass::Large,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Ls {
    None,
    K0,
    K1,
    Hybrid,
}

impl From<Ls> for LocalSearchStrategy {
    fn from(l: Ls) -> Self {
        match l {
            Ls::None => LocalSearchStrategy::None,
            Ls::K0 => LocalSearchStrategy::Kappa0,
            Ls::K1 => LocalSearchStrategy::Kappa1,
            Ls::Hybrid => LocalSearchStrategy::Hybrid,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write seeded random instances.
    Generate {
        #[arg(long, value_enum)]
        profile: Profile,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        sprayers: usize,
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the matheuristic; writes the solution, FILE.trace.csv and FILE.result.csv.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to 200 per node.
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long, value_enum, default_value = "k1")]
        ls: Ls,
        #[arg(long)]
        phase3: bool,
        #[arg(long, default_value_t = 120.0)]
        phase3_secs: f64,
        #[arg(long)]
        waiting_allowed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution file; exit 0 iff feasible.
    Evaluate {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(long)]
        waiting_allowed: bool,
    },
    /// Exact optimum of a tiny instance.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = 120.0)]
        time_limit: f64,
        #[arg(long)]
        waiting_allowed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bounds and the per-sprayer service bound.
    Bounds { instance: PathBuf },
    /// The sequential policy used in practice.
    Baseline {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare methods over generated instances and write a results CSV.
    Bench {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "small")]
        profiles: Vec<Profile>,
        #[arg(long, default_value_t = 1)]
        replicates: u64,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        sprayers: usize,
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long, default_value_t = 120.0)]
        phase3_secs: f64,
        #[arg(long, default_value = "results.csv")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("SSTRPVST_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Refused(_) => 3,
                _ => 2,
            })
        }
    }
}

fn run(cmd: Command) -> sstrpvst::Result<ExitCode> {
    match cmd {
        Command::Generate {
            profile,
            count,
            seed,
            sprayers,
            nodes,
            out,
        } => {
            fs::create_dir_all(&out).map_err(|source| io_error(&out, source))?;
            let class = SizeClass::from(profile);
            for i in 0..count as u64 {
                let mut p = GeneratorProfile::new(class, sprayers, seed + i);
                p.node_count = nodes;
                let inst = generate(&p)?;
                let path = out.join(format!("{}-{}.json", class_name(class), seed + i));
                save_instance(&inst, &path)?;
                println!("{} ({} nodes)", path.display(), inst.num_nodes());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            instance,
            seed,
            iters,
            ls,
            phase3,
            phase3_secs,
            waiting_allowed,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let config = SolverConfig {
                seed,
                iterations: iters,
                local_search: ls.into(),
                phase3,
                phase3_time: secs(phase3_secs)?,
                allow_waiting: waiting_allowed,
                ..SolverConfig::default()
            };
            let outcome = solve(&inst, &config)?;
            let best = &outcome.best;
            print_scored(best);
            if let Some(out) = out {
                save_solution(&best.solution, Some(&best.objective), &out)?;
                write_trace(&outcome.trace, sibling(&out, "trace.csv"))?;
                let name = stem(&instance);
                let lb = composite_lower_bound(&inst);
                write_results(
                    &[record(&name, seed, "matheuristic", &inst, &outcome, lb)],
                    sibling(&out, "result.csv"),
                )?;
            }
            Ok(feasible_code(best.is_feasible()))
        }
        Command::Evaluate {
            instance,
            solution,
            waiting_allowed,
        } => {
            let inst = load_instance(&instance)?;
            let sol = load_solution(&solution, &inst)?;
            let report = check_with(&inst, &sol, waiting_allowed);
            let weight = if waiting_allowed {
                0.0
            } else {
                WAITING_PENALTY
            };
            let o = objective_with(&inst, &sol, weight)?;
            println!("{report}");
            println!(
                "sprayer travel {:.6}\ntanker travel {:.6}\nrefills {:.6}\nservice {:.6}\nwaiting penalty {:.6}\nobjective {:.6}",
                o.sprayer_travel,
                o.tanker_travel,
                o.refill_term,
                o.service_term,
                o.waiting_penalty,
                o.total()
            );
            Ok(feasible_code(report.is_feasible()))
        }
        Command::Oracle {
            instance,
            time_limit,
            waiting_allowed,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let caps = OracleCaps {
                time_limit: secs(time_limit)?,
                ..OracleCaps::default()
            };
            let opts = EvalOptions {
                allow_waiting: waiting_allowed,
            };
            let outcome = exact_solve_with(&inst, &caps, opts)?;
            println!(
                "route sets {} in {:.3} s",
                outcome.route_sets,
                outcome.elapsed.as_secs_f64()
            );
            match outcome.best {
                Some(best) => {
                    print_scored(&best);
                    if let Some(out) = out {
                        save_solution(&best.solution, Some(&best.objective), out)?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("infeasible");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Bounds { instance } => {
            let inst = load_instance(&instance)?;
            println!("composite lower bound {:.6}", composite_lower_bound(&inst));
            match relaxed_exact_bound(&inst, &OracleCaps::default()) {
                Ok(Some(v)) => println!("relaxed exact bound {v:.6}"),
                Ok(None) => println!("relaxed exact bound: relaxation infeasible"),
                Err(e) => println!("relaxed exact bound: {e}"),
            }
            println!("service upper bound {:.6}", service_upper_bound(&inst));
            Ok(ExitCode::SUCCESS)
        }
        Command::Baseline { instance, out } => {
            let inst = load_instance(&instance)?;
            let scored = practice_policy(&inst)?;
            print_scored(&scored);
            if let Some(out) = out {
                save_solution(&scored.solution, Some(&scored.objective), out)?;
            }
            Ok(feasible_code(scored.is_feasible()))
        }
        Command::Bench {
            profiles,
            replicates,
            seeds,
            sprayers,
            iters,
            phase3_secs,
            out,
        } => {
            let phase3_time = secs(phase3_secs)?;
            let mut jobs = Vec::new();
            for &p in &profiles {
                for r in 0..replicates {
                    let inst = generate(&GeneratorProfile::new(p.into(), sprayers, r))?;
                    let name = format!("{}-{r}", class_name(p.into()));
                    for &s in &seeds {
                        jobs.push((name.clone(), inst.clone(), s));
                    }
                }
            }
            let rows: Vec<Vec<RunRecord>> = jobs
                .par_iter()
                .map(|(name, inst, seed)| bench_one(name, inst, *seed, iters, phase3_time))
                .collect::<sstrpvst::Result<_>>()?;
            let rows: Vec<RunRecord> = rows.into_iter().flatten().collect();
            write_results(&rows, &out)?;
            println!("{} rows written to {}", rows.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn bench_one(
    name: &str,
    inst: &Instance,
    seed: u64,
    iters: Option<usize>,
    phase3_time: Duration,
) -> sstrpvst::Result<Vec<RunRecord>> {
    let lb = match relaxed_exact_bound(inst, &OracleCaps::default()) {
        Ok(Some(v)) => v,
        _ => composite_lower_bound(inst),
    };
    let config = SolverConfig {
        seed,
        iterations: iters,
        phase3: true,
        phase3_time,
        ..SolverConfig::default()
    };
    let o = solve(inst, &config)?;
    let t = o.timings;
    let mut construction =
        RunRecord::from_scored(name, seed, "construction", inst, &o.construction, Some(lb));
    construction.construct_secs = t.construct.as_secs_f64();
    construction.total_secs = construction.construct_secs;
    let mut alns = RunRecord::from_scored(name, seed, "alns", inst, &o.alns_best, Some(lb));
    alns.construct_secs = t.construct.as_secs_f64();
    alns.alns_secs = t.alns.as_secs_f64();
    alns.total_secs = alns.construct_secs + alns.alns_secs;
    let full = record(name, seed, "matheuristic", inst, &o, lb);
    let practice = RunRecord::from_scored(
        name,
        seed,
        "practice",
        inst,
        &practice_policy(inst)?,
        Some(lb),
    );
    Ok(vec![construction, alns, full, practice])
}

fn record(
    name: &str,
    seed: u64,
    method: &str,
    inst: &Instance,
    o: &SolveOutcome,
    lb: f64,
) -> RunRecord {
    let mut r = RunRecord::from_scored(name, seed, method, inst, &o.best, Some(lb));
    r.construct_secs = o.timings.construct.as_secs_f64();
    r.alns_secs = o.timings.alns.as_secs_f64();
    r.phase3_secs = o.timings.phase3.as_secs_f64();
    r.total_secs = o.timings.total.as_secs_f64();
    r
}

fn print_scored(s: &Scored) {
    let o = &s.objective;
    for (k, r) in s.solution.routes.iter().enumerate() {
        println!("sprayer {}: {:?}", k + 1, r);
    }
    println!("tanker: {:?}", s.solution.tanker_route);
    println!(
        "objective {:.6} (sprayer travel {:.6}, tanker travel {:.6}, refills {:.6}, service {:.6}, waiting {:.6})",
        o.total(),
        o.sprayer_travel,
        o.tanker_travel,
        o.refill_term,
        o.service_term,
        o.waiting_penalty
    );
    println!("feasible {}", s.is_feasible());
}

fn feasible_code(feasible: bool) -> ExitCode {
    if feasible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn secs(s: f64) -> sstrpvst::Result<Duration> {
    Duration::try_from_secs_f64(s).map_err(|_| Error::InvalidInput(format!("bad duration {s}")))
}

fn class_name(c: SizeClass) -> &'static str {
    match c {
        SizeClass::Tiny => "tiny",
        SizeClass::Small => "small",
        SizeClass::Medium => "medium",
        SizeClass::Large => "large",
    }
}

fn stem(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// `dir/name.json` becomes `dir/name.<suffix>`.
fn sibling(p: &Path, suffix: &str) -> PathBuf {
    p.with_extension(suffix)
}

fn io_error(p: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: p.display().to_string(),
        source,
    }
}
