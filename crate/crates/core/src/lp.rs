//! Small dense two-phase simplex with Bland's rule.
//!
//! Maximizes `c·x` subject to linear rows and `x >= 0`. Good for the
//! few-dozen-variable service problems solved here, nothing more.

const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub coef: Vec<f64>,
    pub rel: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Default)]
pub struct Lp {
    objective: Vec<f64>,
    rows: Vec<Row>,
}

impl Lp {
    /// New problem maximizing `objective · x`.
    pub fn maximize(objective: Vec<f64>) -> Self {
        Lp {
            objective,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds a row given as sparse `(index, coefficient)` pairs.
    pub fn add(&mut self, terms: &[(usize, f64)], rel: Relation, rhs: f64) {
        let mut coef = vec![0.0; self.objective.len()];
        for &(j, a) in terms {
            coef[j] += a;
        }
        self.rows.push(Row { coef, rel, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::new(self).run(&self.objective)
    }
}

struct Tableau {
    n: usize,
    cols: usize,
    art_start: usize,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(lp: &Lp) -> Tableau {
        let n = lp.objective.len();
        let m = lp.rows.len();
        let slacks = lp.rows.iter().filter(|r| r.rel != Relation::Eq).count();
        let arts = lp.rows.iter().filter(|r| {
            let flip = r.rhs < 0.0;
            match r.rel {
                Relation::Eq => true,
                Relation::Le => flip,
                Relation::Ge => !flip,
            }
        });
        let n_art = arts.count();
        let art_start = n + slacks;
        let cols = art_start + n_art;
        let mut a = vec![vec![0.0; cols]; m];
        let mut b = vec![0.0; m];
        let mut basis = vec![0; m];
        let mut next_slack = n;
        let mut next_art = art_start;
        for (i, row) in lp.rows.iter().enumerate() {
            let sign = if row.rhs < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                a[i][j] = sign * row.coef[j];
            }
            b[i] = sign * row.rhs;
            let rel = match (row.rel, sign < 0.0) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            match rel {
                Relation::Le => {
                    a[i][next_slack] = 1.0;
                    basis[i] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    a[i][next_slack] = -1.0;
                    next_slack += 1;
                    a[i][next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    a[i][next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
            }
        }
        Tableau {
            n,
            cols,
            art_start,
            a,
            b,
            basis,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c];
        for v in self.a[r].iter_mut() {
            *v /= p;
        }
        self.b[r] /= p;
        let (pivot_row, pivot_b) = (self.a[r].clone(), self.b[r]);
        for i in 0..self.a.len() {
            if i == r {
                continue;
            }
            let f = self.a[i][c];
            if f.abs() > 0.0 {
                for (v, pv) in self.a[i].iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                self.b[i] -= f * pivot_b;
                self.a[i][c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost · x` over columns `< limit`. Returns false if unbounded.
    fn minimize(&mut self, cost: &[f64], limit: usize) -> bool {
        loop {
            let entering = (0..limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j];
                for (i, &bi) in self.basis.iter().enumerate() {
                    d -= cost[bi] * self.a[i][j];
                }
                d < -EPS
            });
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.a.len() {
                let aic = self.a[i][c];
                if aic > EPS {
                    let ratio = self.b[i] / aic;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - EPS
                                || (ratio <= lr + EPS && self.basis[i] < self.basis[li])
                            {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, c);
        }
    }

    fn run(mut self, objective: &[f64]) -> LpOutcome {
        if self.art_start < self.cols {
            let mut cost = vec![0.0; self.cols];
            for c in cost.iter_mut().skip(self.art_start) {
                *c = 1.0;
            }
            self.minimize(&cost, self.cols);
            let infeas: f64 = self
                .basis
                .iter()
                .zip(&self.b)
                .filter(|(&j, _)| j >= self.art_start)
                .map(|(_, &v)| v)
                .sum();
            let scale = 1.0 + self.b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if infeas > 1e-8 * scale {
                return LpOutcome::Infeasible;
            }
            // drive zero-valued artificials out where possible
            for r in 0..self.basis.len() {
                if self.basis[r] >= self.art_start {
                    if let Some(c) = (0..self.art_start).find(|&c| self.a[r][c].abs() > EPS) {
                        self.pivot(r, c);
                    }
                }
            }
        }
        let mut cost = vec![0.0; self.cols];
        for j in 0..self.n {
            cost[j] = -objective[j];
        }
        if !self.minimize(&cost, self.art_start) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![0.0; self.n];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.n {
                x[j] = self.b[i].max(0.0);
            }
        }
        let value = x.iter().zip(objective).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { x, value }
    }
}
