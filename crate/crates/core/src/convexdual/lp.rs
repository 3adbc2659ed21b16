//! Dense phase-1 simplex for convex-hull membership.
//!
//! Finds `lambda >= 0` with `sum lambda_i = 1` and `sum lambda_i p_i = target`
//! by minimizing the sum of artificial variables. Bland's rule (lowest index
//! enters, lowest basic index leaves on ties) rules out cycling.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;

struct Tableau {
    rows: usize,
    cols: usize,
    /// `rows x (cols + 1)`, last column is the right-hand side.
    data: Vec<f64>,
    /// Reduced costs of the phase-1 objective, plus its value in the last slot.
    cost: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * (self.cols + 1) + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let width = self.cols + 1;
        let inv = 1.0 / self.at(pr, pc);
        for c in 0..width {
            self.data[pr * width + c] *= inv;
        }
        let pivot_row: Vec<f64> = self.data[pr * width..(pr + 1) * width].to_vec();
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let factor = self.data[r * width + pc];
            if factor != 0.0 {
                for c in 0..width {
                    self.data[r * width + c] -= factor * pivot_row[c];
                }
            }
        }
        let factor = self.cost[pc];
        if factor != 0.0 {
            for c in 0..width {
                self.cost[c] -= factor * pivot_row[c];
            }
        }
        self.basis[pr] = pc;
    }
}

/// Outcome of the phase-1 solve.
#[derive(Debug, Clone)]
pub struct HullSolution {
    /// Sum of the artificial variables at the optimum: the L1 residual of the constraints.
    pub residual: f64,
    /// Convex weights of the points, valid when the residual is small.
    pub weights: Vec<f64>,
}

/// Solves the membership LP for `target` in `conv(points)`.
pub fn hull_phase_one(points: &[Vec<f64>], target: &[f64]) -> Result<HullSolution> {
    if points.is_empty() {
        return Err(Error::InvalidInput("point list must be nonempty".into()));
    }
    let d = target.len();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: p.len(),
        });
    }
    let n = points.len();
    let rows = d + 1;
    let cols = n + rows;
    let width = cols + 1;
    let mut data = vec![0.0; rows * width];
    for r in 0..rows {
        let (sign, rhs) = {
            let b = if r < d { target[r] } else { 1.0 };
            if b < 0.0 {
                (-1.0, -b)
            } else {
                (1.0, b)
            }
        };
        for (j, p) in points.iter().enumerate() {
            let a = if r < d { p[r] } else { 1.0 };
            data[r * width + j] = sign * a;
        }
        data[r * width + n + r] = 1.0;
        data[r * width + cols] = rhs;
    }
    // phase-1 reduced costs: minimize sum of artificials
    let mut cost = vec![0.0; width];
    for r in 0..rows {
        for c in 0..n {
            cost[c] -= data[r * width + c];
        }
        cost[cols] -= data[r * width + cols];
    }
    let mut t = Tableau {
        rows,
        cols,
        data,
        cost,
        basis: (n..n + rows).collect(),
    };

    let max_iter = 50 * (cols + rows);
    let mut iter = 0;
    loop {
        if iter > max_iter {
            return Err(Error::Indeterminate(format!(
                "no convergence after {max_iter} pivots"
            )));
        }
        iter += 1;
        let Some(pc) = (0..cols).find(|&c| t.cost[c] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..rows {
            let a = t.at(r, pc);
            if a > PIVOT_EPS {
                let ratio = t.rhs(r) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio - PIVOT_EPS
                            || ((ratio - lratio).abs() <= PIVOT_EPS && t.basis[r] < t.basis[lr])
                        {
                            Some((r, ratio))
                        } else {
                            Some((lr, lratio))
                        }
                    }
                };
            }
        }
        // phase 1 is bounded below by zero, so an entering column always has a pivot row
        let Some((pr, _)) = leave else {
            return Err(Error::Indeterminate("unbounded phase-1 direction".into()));
        };
        t.pivot(pr, pc);
    }

    let residual = -t.cost[cols];
    if !residual.is_finite() {
        return Err(Error::Indeterminate("non-finite objective".into()));
    }
    let mut weights = vec![0.0; n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            weights[b] = t.rhs(r).max(0.0);
        }
    }
    Ok(HullSolution {
        residual: residual.max(0.0),
        weights,
    })
}

/// True iff `target` lies in `conv(points)` up to an L1 constraint residual of `tol`.
pub fn conv_contains(points: &[Vec<f64>], target: &[f64], tol: f64) -> Result<bool> {
    Ok(hull_phase_one(points, target)?.residual <= tol)
}
