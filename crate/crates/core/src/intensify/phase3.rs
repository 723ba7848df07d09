use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::alns::{run_restricted, AlnsConfig, ArcPool, LocalSearchStrategy};
use crate::intensify::{local_search_with, SearchBudget};
use crate::model::{objective::path_length, Instance, Scored};
use crate::schedule::{search_eval, AlphaConfig, EvalOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct Phase3Config {
    pub time_limit: Duration,
    /// Complete route sets the exact pool search may evaluate before
    /// handing over to the restricted search.
    pub max_candidates: usize,
    /// Iterations of the restricted search; `None` means 200 per node.
    pub fallback_iterations: Option<usize>,
    pub seed: u64,
    pub ls_budget: SearchBudget,
    pub alpha: AlphaConfig,
    pub allow_waiting: bool,
}

impl Default for Phase3Config {
    fn default() -> Self {
        Phase3Config {
            time_limit: Duration::from_secs(120),
            max_candidates: 2000,
            fallback_iterations: None,
            seed: 0,
            ls_budget: SearchBudget::default(),
            alpha: AlphaConfig::default(),
            allow_waiting: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Phase3Outcome {
    pub best: Scored,
    /// True when every pool route set was examined.
    pub exact: bool,
    /// Route sets scored by local search.
    pub evaluated: usize,
    pub improved: bool,
}

/// Re-optimizes over route sets built only from pool arcs. Small pools are
/// enumerated exhaustively, each complete route set scored by local search
/// with kappa 1; otherwise a search that may only insert between
/// pool-adjacent neighbours takes over. Never returns worse than `best`.
pub fn phase3_improve(
    instance: &Instance,
    pool: &ArcPool,
    best: &Scored,
    config: &Phase3Config,
) -> Phase3Outcome {
    let started = Instant::now();
    let opts = EvalOptions {
        allow_waiting: config.allow_waiting,
    };
    let mut pool = pool.clone();
    pool.record(&best.solution);
    let mut dfs = Dfs {
        instance,
        pool: &pool,
        config,
        opts,
        started,
        max_service: (1..=instance.num_nodes())
            .map(|i| instance.max_service(i))
            .sum(),
        best: best.clone(),
        evaluated: 0,
        aborted: false,
        dead: HashSet::new(),
        routes: Vec::new(),
        visited: vec![false; instance.num_nodes() + 1],
        count: 0,
        steps: 0,
    };
    let complete = dfs.start_route(0.0);
    let exact = complete && !dfs.aborted;
    let evaluated = dfs.evaluated;
    let mut incumbent = dfs.best;

    if !exact {
        let remaining = config.time_limit.saturating_sub(started.elapsed());
        if !remaining.is_zero() {
            let alns = AlnsConfig {
                max_iter: config.fallback_iterations,
                seed: config.seed,
                local_search: LocalSearchStrategy::Kappa1,
                ls_budget: config.ls_budget,
                alpha: config.alpha.clone(),
                allow_waiting: config.allow_waiting,
                time_limit: Some(remaining),
                ..AlnsConfig::default()
            };
            let out = run_restricted(instance, incumbent.clone(), &alns, Some(&pool));
            if out.best.search_cost() < incumbent.search_cost() - 1e-9 {
                incumbent = out.best;
            }
        }
    }
    let improved = incumbent.search_cost() < best.search_cost() - 1e-9;
    Phase3Outcome {
        best: if improved { incumbent } else { best.clone() },
        exact,
        evaluated,
        improved,
    }
}

struct Dfs<'a> {
    instance: &'a Instance,
    pool: &'a ArcPool,
    config: &'a Phase3Config,
    opts: EvalOptions,
    started: Instant,
    max_service: f64,
    best: Scored,
    evaluated: usize,
    aborted: bool,
    /// Partial states known to have no completion: (visited, endpoint,
    /// routes done, first node of the open route).
    dead: HashSet<(Vec<bool>, usize, usize, usize)>,
    routes: Vec<Vec<usize>>,
    visited: Vec<bool>,
    count: usize,
    steps: u64,
}

impl Dfs<'_> {
    fn bar(&self) -> f64 {
        self.best.search_cost() - 1e-9
    }

    fn out_of_budget(&mut self) -> bool {
        if self.evaluated >= self.config.max_candidates
            || self.started.elapsed() > self.config.time_limit
        {
            self.aborted = true;
        }
        self.aborted
    }

    /// Opens the next route; its first node must exceed the previous
    /// route's so identical sprayers are not permuted. Returns whether a
    /// completion exists below.
    fn start_route(&mut self, travel: f64) -> bool {
        if self.routes.len() == self.instance.num_sprayers() {
            if self.count == self.instance.num_nodes() {
                self.evaluate();
                return true;
            }
            return false;
        }
        let floor = self.routes.last().map_or(0, |r| r[0]);
        let firsts: Vec<usize> = self
            .pool
            .successors(0)
            .filter(|&f| f > floor && !self.visited[f])
            .collect();
        let mut any = false;
        for f in firsts {
            if self.aborted {
                return true;
            }
            self.visit(f);
            self.routes.push(vec![f]);
            any |= self.extend(travel + self.instance.t(0, f));
            self.routes.pop();
            self.unvisit(f);
        }
        any
    }

    fn extend(&mut self, travel: f64) -> bool {
        self.steps += 1;
        if self.steps.is_multiple_of(1024) && self.started.elapsed() > self.config.time_limit {
            self.aborted = true;
        }
        if self.aborted {
            return true;
        }
        // remaining travel and tanker cost are non-negative
        if travel - self.max_service >= self.bar() {
            return true;
        }
        let k = self.routes.len();
        let end = *self.routes[k - 1].last().expect("open route is nonempty");
        let key = (self.visited.clone(), end, k, self.routes[k - 1][0]);
        if self.dead.contains(&key) {
            return false;
        }
        let mut any = false;
        let next: Vec<usize> = self.pool.successors(end).collect();
        for j in next {
            if self.aborted {
                return true;
            }
            if j == 0 {
                any |= self.start_route(travel + self.instance.t(end, 0));
            } else if !self.visited[j] {
                self.visit(j);
                self.routes[k - 1].push(j);
                any |= self.extend(travel + self.instance.t(end, j));
                self.routes[k - 1].pop();
                self.unvisit(j);
            }
        }
        if !any && !self.aborted {
            self.dead.insert(key);
        }
        any
    }

    fn visit(&mut self, i: usize) {
        self.visited[i] = true;
        self.count += 1;
    }

    fn unvisit(&mut self, i: usize) {
        self.visited[i] = false;
        self.count -= 1;
    }

    fn evaluate(&mut self) {
        let travel: f64 = self
            .routes
            .iter()
            .map(|r| path_length(self.instance, r))
            .sum();
        if travel - self.max_service >= self.bar() || self.out_of_budget() {
            return;
        }
        self.evaluated += 1;
        let start =
            search_eval(self.instance, &self.routes, &self.config.alpha, self.opts).into_scored();
        let ls =
            local_search_with(self.instance, &start, 1, self.config.ls_budget, self.opts).scored;
        if ls.search_cost() < self.bar() {
            self.best = ls;
        }
    }
}
