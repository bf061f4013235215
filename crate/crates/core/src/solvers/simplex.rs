//! Dense two-phase primal simplex with Bland's anti-cycling rule.
//!
//! Sized for the relaxations solved here (a few hundred columns, tens of
//! rows); it makes no attempt at sparsity or numerical refactorization.

use thiserror::Error;

const PIVOT_EPS: f64 = 1e-9;
const FEAS_EPS: f64 = 1e-7;
const MAX_PIVOTS: usize = 200_000;

/// Sparse terms, relation and right-hand side of one constraint.
type Row = (Vec<(usize, f64)>, Relation, f64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    /// Sparse coefficients `(variable, value)`.
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `maximize c.x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("pivot limit reached")]
    PivotLimit,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            objective: vec![0.0; num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, terms: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        debug_assert!(terms.iter().all(|&(v, _)| v < self.num_vars()));
        self.constraints.push(Constraint {
            terms,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau {
    /// rows x (cols + 1); the last column is the right-hand side.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    num_vars: usize,
    artificial_from: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let slacks = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let normalized: Vec<Row> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs < 0.0 {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    let terms = c.terms.iter().map(|&(v, a)| (v, -a)).collect();
                    (terms, flipped, -c.rhs)
                } else {
                    (c.terms.clone(), c.relation, c.rhs)
                }
            })
            .collect();
        let artificials = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Le)
            .count();
        let cols = n + slacks + artificials;
        let artificial_from = n + slacks;

        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut next_slack, mut next_art) = (n, artificial_from);
        for (terms, relation, rhs) in normalized {
            let mut row = vec![0.0; cols + 1];
            for (v, a) in terms {
                row[v] += a;
            }
            row[cols] = rhs;
            match relation {
                Relation::Le => {
                    row[next_slack] = 1.0;
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -1.0;
                    next_slack += 1;
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }
        Self {
            rows,
            basis,
            cols,
            num_vars: n,
            artificial_from,
        }
    }

    /// Reduced-cost row for maximizing `cost`: entry `j` is `c_B B^-1 A_j - c_j`.
    fn objective_row(&self, cost: &[f64]) -> Vec<f64> {
        let mut obj: Vec<f64> = (0..=self.cols)
            .map(|j| if j < self.cols { -cost[j] } else { 0.0 })
            .collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost[b];
            if cb != 0.0 {
                for (o, r) in obj.iter_mut().zip(row) {
                    *o += cb * r;
                }
            }
        }
        obj
    }

    fn pivot(&mut self, obj: &mut [f64], r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pr) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
                row[c] = 0.0;
            }
        }
        let f = obj[c];
        if f != 0.0 {
            for (v, pr) in obj.iter_mut().zip(&pivot_row) {
                *v -= f * pr;
            }
            obj[c] = 0.0;
        }
        self.basis[r] = c;
    }

    fn optimize(&mut self, obj: &mut [f64], allowed_cols: usize) -> Result<(), LpError> {
        for _ in 0..MAX_PIVOTS {
            let Some(enter) = (0..allowed_cols).find(|&j| obj[j] < -PIVOT_EPS) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[enter];
                if a > PIVOT_EPS {
                    let ratio = row[self.cols] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - PIVOT_EPS
                                || (ratio <= lr + PIVOT_EPS && self.basis[i] < self.basis[li])
                            {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let (r, _) = leave.ok_or(LpError::Unbounded)?;
            self.pivot(obj, r, enter);
        }
        Err(LpError::PivotLimit)
    }

    fn solve(mut self, objective: &[f64]) -> Result<LpSolution, LpError> {
        // phase 1: drive artificials to zero
        if self.artificial_from < self.cols {
            let mut cost = vec![0.0; self.cols];
            for c in cost.iter_mut().skip(self.artificial_from) {
                *c = -1.0;
            }
            let mut obj = self.objective_row(&cost);
            self.optimize(&mut obj, self.cols)?;
            if -obj[self.cols] > FEAS_EPS {
                return Err(LpError::Infeasible);
            }
            // pivot remaining zero-level artificials out, dropping redundant rows
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.artificial_from {
                    match (0..self.artificial_from).find(|&j| self.rows[i][j].abs() > PIVOT_EPS) {
                        Some(j) => {
                            self.pivot(&mut obj, i, j);
                            i += 1;
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }

        let mut cost = vec![0.0; self.cols];
        cost[..self.num_vars].copy_from_slice(objective);
        let mut obj = self.objective_row(&cost);
        self.optimize(&mut obj, self.artificial_from)?;

        let mut x = vec![0.0; self.num_vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_vars {
                x[b] = row[self.cols].max(0.0);
            }
        }
        let objective_value = x.iter().zip(objective).map(|(a, c)| a * c).sum();
        Ok(LpSolution {
            x,
            objective: objective_value,
        })
    }
}
