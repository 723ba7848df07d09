//! The three-phase pipeline: construction, adaptive search, arc-pool phase.

use std::time::{Duration, Instant};

use crate::alns::{run, AlnsConfig, ArcPool, LocalSearchStrategy, OperatorStats, TraceRow};
use crate::construct::{cluster_construct_with, greedy_construct_with};
use crate::error::Result;
use crate::intensify::{phase3_improve, Phase3Config, SearchBudget};
use crate::model::{Instance, Scored};
use crate::schedule::{AlphaConfig, EvalOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub seed: u64,
    /// ALNS iterations; `None` means 200 per node.
    pub iterations: Option<usize>,
    pub local_search: LocalSearchStrategy,
    pub ls_budget: SearchBudget,
    pub phase3: bool,
    pub phase3_time: Duration,
    pub allow_waiting: bool,
    pub alpha: AlphaConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            iterations: None,
            local_search: LocalSearchStrategy::Kappa1,
            ls_budget: SearchBudget::default(),
            phase3: true,
            phase3_time: Duration::from_secs(120),
            allow_waiting: false,
            alpha: AlphaConfig::default(),
        }
    }
}

impl SolverConfig {
    pub fn alns(&self) -> AlnsConfig {
        AlnsConfig {
            max_iter: self.iterations,
            seed: self.seed,
            local_search: self.local_search,
            ls_budget: self.ls_budget,
            alpha: self.alpha.clone(),
            allow_waiting: self.allow_waiting,
            ..AlnsConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseTimings {
    pub construct: Duration,
    pub alns: Duration,
    pub phase3: Duration,
    pub total: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub construction: Scored,
    pub alns_best: Scored,
    pub best: Scored,
    pub pool: ArcPool,
    pub stats: OperatorStats,
    pub trace: Vec<TraceRow>,
    pub timings: PhaseTimings,
    /// Whether phase 3 enumerated the whole pool.
    pub phase3_exact: Option<bool>,
}

/// Better of the two constructions, then ALNS, then optionally phase 3.
pub fn solve(instance: &Instance, config: &SolverConfig) -> Result<SolveOutcome> {
    let alns = config.alns();
    alns.validate()?;
    let opts = EvalOptions {
        allow_waiting: config.allow_waiting,
    };
    let t0 = Instant::now();
    let greedy = greedy_construct_with(instance, &config.alpha, opts);
    let cluster = cluster_construct_with(instance, &config.alpha, opts);
    let construction = if cluster.search_cost() < greedy.search_cost() {
        cluster
    } else {
        greedy
    }
    .into_scored();
    let construct = t0.elapsed();

    let t1 = Instant::now();
    let out = run(instance, construction.clone(), &alns);
    let alns_time = t1.elapsed();

    let t2 = Instant::now();
    let (best, phase3_exact) = if config.phase3 {
        let p3 = phase3_improve(
            instance,
            &out.pool,
            &out.best,
            &Phase3Config {
                time_limit: config.phase3_time,
                fallback_iterations: config.iterations,
                seed: config.seed,
                ls_budget: config.ls_budget,
                alpha: config.alpha.clone(),
                allow_waiting: config.allow_waiting,
                ..Phase3Config::default()
            },
        );
        (p3.best, Some(p3.exact))
    } else {
        (out.best.clone(), None)
    };
    let phase3 = t2.elapsed();
    Ok(SolveOutcome {
        construction,
        alns_best: out.best,
        best,
        pool: out.pool,
        stats: out.stats,
        trace: out.trace,
        timings: PhaseTimings {
            construct,
            alns: alns_time,
            phase3,
            total: t0.elapsed(),
        },
        phase3_exact,
    })
}
