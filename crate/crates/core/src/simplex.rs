//! Dense-tableau primal simplex for `max c·x` s.t. `A x <= b`, `x >= 0`,
//! `b >= 0`. The all-slack basis is feasible, so no phase one is needed.

use thiserror::Error;

/// Smallest pivot element accepted by the ratio test.
pub const PIVOT_TOL: f64 = 1e-9;
/// Reduced costs at or below this are treated as non-improving.
pub const OPTIMALITY_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum SimplexError {
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex pivot limit {0} reached")]
    PivotLimit(usize),
    #[error("right-hand side must be non-negative (row {0})")]
    NegativeRhs(usize),
}

#[derive(Debug, Clone)]
pub struct PackingLp {
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// One dual value per row (non-negative).
    pub duals: Vec<f64>,
    pub pivots: usize,
}

impl PackingLp {
    pub fn new(objective: Vec<f64>) -> Self {
        PackingLp {
            objective,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn add_row(&mut self, coefficients: Vec<f64>, rhs: f64) {
        debug_assert_eq!(coefficients.len(), self.objective.len());
        self.rows.push(coefficients);
        self.rhs.push(rhs);
    }

    pub fn maximize(&self) -> Result<LpSolution, SimplexError> {
        if let Some(i) = self.rhs.iter().position(|&b| b < 0.0) {
            return Err(SimplexError::NegativeRhs(i));
        }
        Tableau::new(self).solve()
    }
}

struct Tableau {
    rows: usize,
    vars: usize,
    /// rows x (vars + rows + 1), last entry of each row is the rhs
    body: Vec<Vec<f64>>,
    /// reduced costs c_j - z_j for every column, last entry is -objective
    reduced: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(lp: &PackingLp) -> Self {
        let rows = lp.rows.len();
        let vars = lp.objective.len();
        let width = vars + rows + 1;
        let body = lp
            .rows
            .iter()
            .zip(&lp.rhs)
            .enumerate()
            .map(|(i, (coef, &b))| {
                let mut row = vec![0.0; width];
                row[..vars].copy_from_slice(coef);
                row[vars + i] = 1.0;
                row[width - 1] = b;
                row
            })
            .collect();
        let mut reduced = vec![0.0; width];
        reduced[..vars].copy_from_slice(&lp.objective);
        Tableau {
            rows,
            vars,
            body,
            reduced,
            basis: (vars..vars + rows).collect(),
        }
    }

    fn solve(mut self) -> Result<LpSolution, SimplexError> {
        let columns = self.vars + self.rows;
        let bland_after = 5 * (self.rows + columns);
        let pivot_limit = 50 * (self.rows + columns) + 1000;
        let mut degenerate_run = 0;
        let mut bland = false;
        let mut pivots = 0;

        loop {
            let entering = if bland {
                (0..columns).find(|&j| self.reduced[j] > OPTIMALITY_TOL)
            } else {
                let mut best = None;
                let mut best_val = OPTIMALITY_TOL;
                for j in 0..columns {
                    if self.reduced[j] > best_val {
                        best_val = self.reduced[j];
                        best = Some(j);
                    }
                }
                best
            };
            let Some(entering) = entering else { break };

            let rhs = columns;
            let mut leaving: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.body[i][entering];
                if a > PIVOT_TOL {
                    let ratio = self.body[i][rhs] / a;
                    leaving = match leaving {
                        None => Some((i, ratio)),
                        Some((r, best)) => {
                            if ratio < best - 1e-12
                                || (ratio <= best + 1e-12 && self.basis[i] < self.basis[r])
                            {
                                Some((i, ratio))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            let Some((row, ratio)) = leaving else {
                return Err(SimplexError::Unbounded);
            };

            if ratio <= 1e-12 {
                degenerate_run += 1;
                if degenerate_run >= bland_after {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }

            self.pivot(row, entering);
            pivots += 1;
            if pivots >= pivot_limit {
                return Err(SimplexError::PivotLimit(pivot_limit));
            }
        }

        let width = columns + 1;
        let mut x = vec![0.0; self.vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.vars {
                x[b] = self.body[i][width - 1].max(0.0);
            }
        }
        let duals = (0..self.rows)
            .map(|i| (-self.reduced[self.vars + i]).max(0.0))
            .collect();
        Ok(LpSolution {
            x,
            objective: -self.reduced[width - 1],
            duals,
            pivots,
        })
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.vars + self.rows + 1;
        let p = self.body[row][col];
        for v in self.body[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.body[row].clone();
        for (i, r) in self.body.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for j in 0..width {
                    r[j] -= f * pivot_row[j];
                }
                r[col] = 0.0;
            }
        }
        let f = self.reduced[col];
        if f != 0.0 {
            for (r, p) in self.reduced.iter_mut().zip(&pivot_row) {
                *r -= f * p;
            }
            self.reduced[col] = 0.0;
        }
        self.basis[row] = col;
    }
}
