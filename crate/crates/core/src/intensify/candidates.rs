use std::collections::BTreeSet;

use crate::model::Solution;

/// Nodes allowed to become refill points during local search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub nodes: BTreeSet<usize>,
    pub kappa: usize,
}

impl CandidateSet {
    pub fn contains(&self, id: usize) -> bool {
        self.nodes.contains(&id)
    }

    /// Membership vector indexed by node id.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n + 1];
        for &i in &self.nodes {
            m[i] = true;
        }
        m
    }
}

/// Each refill node plus up to `kappa` neighbours on either side within
/// its own route.
pub fn candidate_set(solution: &Solution, kappa: usize) -> CandidateSet {
    let mut nodes = BTreeSet::new();
    for route in &solution.routes {
        for (idx, &i) in route.iter().enumerate() {
            if !solution.refill.get(i).copied().unwrap_or(false) {
                continue;
            }
            let lo = idx.saturating_sub(kappa);
            let hi = (idx + kappa).min(route.len() - 1);
            nodes.extend(&route[lo..=hi]);
        }
    }
    CandidateSet { nodes, kappa }
}
