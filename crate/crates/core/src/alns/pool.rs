use std::collections::BTreeSet;

use crate::model::Solution;

/// Directed sprayer arcs seen in best solutions; 0 is the depot.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArcPool {
    arcs: BTreeSet<(usize, usize)>,
}

impl ArcPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_solution(solution: &Solution) -> Self {
        let mut pool = Self::new();
        pool.record(solution);
        pool
    }

    pub fn record(&mut self, solution: &Solution) {
        self.arcs.extend(solution.arcs());
    }

    pub fn insert(&mut self, from: usize, to: usize) {
        self.arcs.insert((from, to));
    }

    pub fn contains(&self, from: usize, to: usize) -> bool {
        self.arcs.contains(&(from, to))
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    /// Successors of `from` in the pool, ascending.
    pub fn successors(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs
            .range((from, 0)..=(from, usize::MAX))
            .map(|&(_, j)| j)
    }
}
