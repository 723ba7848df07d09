use serde::{Deserialize, Serialize};

use super::destroy::DestroyOp;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorStat {
    pub score: f64,
    pub weight: f64,
    pub uses: u64,
    pub new_bests: u64,
}

/// Adaptive state of the destroy operators, indexed by operator id - 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorStats {
    pub ops: Vec<OperatorStat>,
}

impl Default for OperatorStats {
    fn default() -> Self {
        let n = DestroyOp::ALL.len();
        OperatorStats {
            ops: vec![
                OperatorStat {
                    score: 1.0,
                    weight: 1.0 / n as f64,
                    uses: 0,
                    new_bests: 0,
                };
                n
            ],
        }
    }
}

impl OperatorStats {
    pub fn weights(&self) -> Vec<f64> {
        self.ops.iter().map(|o| o.weight).collect()
    }
}

/// Smooths each used operator's score towards its best score of the
/// segment and renormalizes the weights. Unused operators keep their score.
pub fn update_weights(
    stats: &OperatorStats,
    segment_scores: &[Option<f64>],
    mu: f64,
) -> OperatorStats {
    let mut out = stats.clone();
    for (op, seg) in out.ops.iter_mut().zip(segment_scores) {
        if let Some(phi) = seg {
            op.score = mu * op.score + (1.0 - mu) * phi;
        }
    }
    let total: f64 = out.ops.iter().map(|o| o.score).sum();
    for op in out.ops.iter_mut() {
        op.weight = op.score / total;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothing_and_normalization() {
        let s = OperatorStats::default();
        let mut seg = vec![None; 11];
        seg[0] = Some(7.0);
        let u = update_weights(&s, &seg, 0.8);
        assert!((u.ops[0].score - 2.2).abs() < 1e-12);
        assert_eq!(u.ops[1].score, 1.0);
        assert!((u.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);

        let fixed = update_weights(&s, &[Some(1.0); 11], 0.8);
        assert!(fixed
            .ops
            .iter()
            .all(|o| o.score == 1.0 && (o.weight - 1.0 / 11.0).abs() < 1e-15));
    }
}
