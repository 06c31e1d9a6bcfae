//! A revised simplex solver for standard-form linear programs
//! `min c'x  s.t.  Ax = b, x >= 0`.
//!
//! The solver keeps an explicit dense basis inverse updated by Gauss-Jordan
//! pivots and prices with Dantzig's rule, switching to Bland's rule after a
//! run of degenerate pivots so cycling is impossible. It always terminates
//! at a basic (vertex) optimum, which is what the flat norm integrality
//! certificate relies on: for totally unimodular constraint matrices with
//! integral right-hand sides, basic solutions are integral.

use crate::error::{Error, Result};

/// Ratio-test and reduced-cost tolerance.
const TOL: f64 = 1e-10;
/// Consecutive degenerate pivots before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 40;
const MAX_ITERATIONS: usize = 2_000_000;

/// A standard-form LP with sparse columns.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_rows: usize,
    /// Per-variable cost coefficients; all must be finite.
    pub cost: Vec<f64>,
    /// Per-variable sparse column: `(row, coefficient)` entries.
    pub columns: Vec<Vec<(usize, f64)>>,
    pub rhs: Vec<f64>,
}

/// A basic optimal solution.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub values: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

struct Tableau<'a> {
    lp: &'a LinearProgram,
    /// Variable occupying each basis row.
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    /// Dense basis inverse, row-major `num_rows x num_rows`.
    binv: Vec<f64>,
    /// Current basic variable values.
    xb: Vec<f64>,
}

impl<'a> Tableau<'a> {
    fn new(lp: &'a LinearProgram, initial_basis: &[usize]) -> Result<Self> {
        let m = lp.num_rows;
        if initial_basis.len() != m {
            return Err(Error::SolverIntegrity(format!(
                "initial basis has {} entries for {} rows",
                initial_basis.len(),
                m
            )));
        }

        // Assemble the basis matrix and invert it by Gauss-Jordan with
        // partial pivoting.
        let mut bmat = vec![0.0; m * m];
        for (col, &var) in initial_basis.iter().enumerate() {
            for &(row, val) in &lp.columns[var] {
                bmat[row * m + col] = val;
            }
        }
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            binv[i * m + i] = 1.0;
        }
        for col in 0..m {
            let pivot_row = (col..m)
                .max_by(|&a, &b| {
                    bmat[a * m + col]
                        .abs()
                        .partial_cmp(&bmat[b * m + col].abs())
                        .unwrap()
                })
                .unwrap();
            if bmat[pivot_row * m + col].abs() < TOL {
                return Err(Error::SolverIntegrity(
                    "initial basis matrix is singular".into(),
                ));
            }
            if pivot_row != col {
                for j in 0..m {
                    bmat.swap(pivot_row * m + j, col * m + j);
                    binv.swap(pivot_row * m + j, col * m + j);
                }
            }
            let pivot = bmat[col * m + col];
            for j in 0..m {
                bmat[col * m + j] /= pivot;
                binv[col * m + j] /= pivot;
            }
            for i in 0..m {
                if i != col {
                    let factor = bmat[i * m + col];
                    if factor != 0.0 {
                        for j in 0..m {
                            bmat[i * m + j] -= factor * bmat[col * m + j];
                            binv[i * m + j] -= factor * binv[col * m + j];
                        }
                    }
                }
            }
        }

        let mut xb = vec![0.0; m];
        for i in 0..m {
            xb[i] = (0..m).map(|r| binv[i * m + r] * lp.rhs[r]).sum();
        }
        if xb.iter().any(|&v| v < -1e-7) {
            return Err(Error::SolverIntegrity(
                "initial basis is primal infeasible".into(),
            ));
        }
        for v in &mut xb {
            if *v < 0.0 {
                *v = 0.0;
            }
        }

        let mut in_basis = vec![false; lp.cost.len()];
        for &var in initial_basis {
            in_basis[var] = true;
        }

        Ok(Tableau {
            lp,
            basis: initial_basis.to_vec(),
            in_basis,
            binv,
            xb,
        })
    }

    fn duals(&self) -> Vec<f64> {
        let m = self.lp.num_rows;
        let mut y = vec![0.0; m];
        for (i, &var) in self.basis.iter().enumerate() {
            let cb = self.lp.cost[var];
            if cb != 0.0 {
                for (row, yr) in y.iter_mut().enumerate() {
                    *yr += cb * self.binv[i * m + row];
                }
            }
        }
        y
    }

    fn reduced_cost(&self, var: usize, y: &[f64]) -> f64 {
        let mut c = self.lp.cost[var];
        for &(row, val) in &self.lp.columns[var] {
            c -= y[row] * val;
        }
        c
    }

    /// Column of the entering variable in the current basis frame.
    fn direction(&self, var: usize) -> Vec<f64> {
        let m = self.lp.num_rows;
        let mut d = vec![0.0; m];
        for &(row, val) in &self.lp.columns[var] {
            if val != 0.0 {
                for i in 0..m {
                    d[i] += self.binv[i * m + row] * val;
                }
            }
        }
        d
    }

    fn pivot(&mut self, entering: usize, leaving_row: usize, d: &[f64], theta: f64) {
        let m = self.lp.num_rows;
        for i in 0..m {
            self.xb[i] -= theta * d[i];
            if self.xb[i] < 0.0 {
                self.xb[i] = 0.0;
            }
        }
        self.xb[leaving_row] = theta;

        let pivot = d[leaving_row];
        let row_start = leaving_row * m;
        for j in 0..m {
            self.binv[row_start + j] /= pivot;
        }
        for i in 0..m {
            if i != leaving_row && d[i] != 0.0 {
                let factor = d[i];
                for j in 0..m {
                    self.binv[i * m + j] -= factor * self.binv[row_start + j];
                }
            }
        }

        self.in_basis[self.basis[leaving_row]] = false;
        self.in_basis[entering] = true;
        self.basis[leaving_row] = entering;
    }
}

/// Solve the LP starting from a primal-feasible basis (one variable per
/// row, basis matrix invertible, basic values nonnegative).
///
/// Flat norm instances always have such a basis available, so no phase-1
/// is needed. Unboundedness or residual failures indicate a malformed
/// instance and surface as [`Error::SolverIntegrity`].
pub fn solve(lp: &LinearProgram, initial_basis: &[usize]) -> Result<LpSolution> {
    let n = lp.cost.len();
    if lp.columns.len() != n {
        return Err(Error::SolverIntegrity(
            "cost and column counts disagree".into(),
        ));
    }
    if lp.rhs.len() != lp.num_rows {
        return Err(Error::SolverIntegrity("rhs length mismatch".into()));
    }

    let mut tableau = Tableau::new(lp, initial_basis)?;
    let mut iterations = 0usize;
    let mut degenerate_streak = 0usize;

    loop {
        if iterations > MAX_ITERATIONS {
            return Err(Error::SolverIntegrity(
                "iteration limit exceeded".into(),
            ));
        }

        let y = tableau.duals();
        let bland = degenerate_streak >= DEGENERATE_STREAK;
        let mut entering: Option<(usize, f64)> = None;
        for var in 0..n {
            if tableau.in_basis[var] {
                continue;
            }
            let rc = tableau.reduced_cost(var, &y);
            if rc < -TOL {
                if bland {
                    entering = Some((var, rc));
                    break;
                }
                match entering {
                    Some((_, best)) if rc >= best => {}
                    _ => entering = Some((var, rc)),
                }
            }
        }

        let Some((entering_var, _)) = entering else {
            break; // optimal
        };

        let d = tableau.direction(entering_var);
        let mut theta = f64::INFINITY;
        for (i, &di) in d.iter().enumerate() {
            if di > TOL {
                let ratio = tableau.xb[i] / di;
                if ratio < theta {
                    theta = ratio;
                }
            }
        }
        if !theta.is_finite() {
            return Err(Error::SolverIntegrity(
                "unbounded direction in a flat norm LP".into(),
            ));
        }
        // Leaving row: among rows within tolerance of the minimum ratio,
        // take the one whose basic variable has the smallest index
        // (Bland's anti-cycling tie-break).
        let mut leaving_row = None;
        for (i, &di) in d.iter().enumerate() {
            if di > TOL && tableau.xb[i] / di <= theta + TOL {
                leaving_row = match leaving_row {
                    Some(best) if tableau.basis[best] <= tableau.basis[i] => Some(best),
                    _ => Some(i),
                };
            }
        }
        let leaving_row = leaving_row.ok_or_else(|| {
            Error::SolverIntegrity("ratio test found no leaving row".into())
        })?;

        if theta <= TOL {
            degenerate_streak += 1;
        } else {
            degenerate_streak = 0;
        }
        tableau.pivot(entering_var, leaving_row, &d, theta.max(0.0));
        iterations += 1;
    }

    let mut values = vec![0.0; n];
    for (i, &var) in tableau.basis.iter().enumerate() {
        values[var] = tableau.xb[i];
    }

    // Residual check: the returned point must satisfy Ax = b.
    let mut residual = vec![0.0; lp.num_rows];
    for (var, &v) in values.iter().enumerate() {
        if v != 0.0 {
            for &(row, val) in &lp.columns[var] {
                residual[row] += val * v;
            }
        }
    }
    let scale = lp.rhs.iter().fold(1.0f64, |acc, &b| acc.max(b.abs()));
    for (row, &b) in lp.rhs.iter().enumerate() {
        if (residual[row] - b).abs() > 1e-7 * scale {
            return Err(Error::SolverIntegrity(format!(
                "solution violates constraint {row}: residual {}",
                residual[row] - b
            )));
        }
    }

    let objective = values
        .iter()
        .zip(&lp.cost)
        .map(|(&v, &c)| v * c)
        .sum::<f64>();

    Ok(LpSolution {
        values,
        objective,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_identity_program() {
        // min x0 + x1 s.t. x0 = 2, x1 = 3.
        let lp = LinearProgram {
            num_rows: 2,
            cost: vec![1.0, 1.0],
            columns: vec![vec![(0, 1.0)], vec![(1, 1.0)]],
            rhs: vec![2.0, 3.0],
        };
        let sol = solve(&lp, &[0, 1]).unwrap();
        assert!((sol.objective - 5.0).abs() < 1e-12);
    }

    #[test]
    fn prefers_cheaper_route() {
        // min 3 x0 + x1 + x2 s.t. x0 + x1 - x2 = 1; optimum x1 = 1.
        let lp = LinearProgram {
            num_rows: 1,
            cost: vec![3.0, 1.0, 1.0],
            columns: vec![vec![(0, 1.0)], vec![(0, 1.0)], vec![(0, -1.0)]],
            rhs: vec![1.0],
        };
        let sol = solve(&lp, &[0]).unwrap();
        assert!((sol.objective - 1.0).abs() < 1e-12);
        assert!((sol.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_instance_terminates() {
        // Degenerate rhs with redundant cheap directions.
        let lp = LinearProgram {
            num_rows: 2,
            cost: vec![1.0, 1.0, 0.5, 0.25],
            columns: vec![
                vec![(0, 1.0)],
                vec![(1, 1.0)],
                vec![(0, 1.0), (1, 1.0)],
                vec![(0, 1.0), (1, -1.0)],
            ],
            rhs: vec![1.0, 0.0],
        };
        let sol = solve(&lp, &[0, 1]).unwrap();
        assert!(sol.objective <= 1.0 + 1e-12);
    }

    #[test]
    fn rejects_infeasible_start() {
        let lp = LinearProgram {
            num_rows: 1,
            cost: vec![1.0],
            columns: vec![vec![(0, 1.0)]],
            rhs: vec![-1.0],
        };
        assert!(solve(&lp, &[0]).is_err());
    }
}
