//! Falsification of the three Toeplitz regularity conditions.
//!
//! Finite evidence can refute regularity but never establish it. A condition
//! is refuted only if its violation shows no sign of decaying between row
//! `depth / 2` and row `depth`; slowly converging rows (Cesàro columns decay
//! like `1/n`) stay consistent.

use std::fmt;

use crate::error::{Error, Result};

use super::matrix::SummabilityMatrix;

/// Number of leading columns checked for decay.
pub const CHECKED_COLUMNS: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ToeplitzWitness {
    /// Row index and the offending value (row sum or absolute row sum).
    Row { n: u64, value: f64 },
    /// Column index and the entry at the deepest row.
    Column { k: u64, value: f64 },
}

impl fmt::Display for ToeplitzWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToeplitzWitness::Row { n, value } => write!(f, "row {n} value {value}"),
            ToeplitzWitness::Column { k, value } => write!(f, "column {k} value {value}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConditionStatus {
    Consistent,
    Refuted(ToeplitzWitness),
}

impl ConditionStatus {
    pub fn is_refuted(&self) -> bool {
        matches!(self, ConditionStatus::Refuted(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzReport {
    pub matrix: String,
    pub depth: u64,
    pub tol: f64,
    /// `sup_n sum_k |a_nk| < inf`; sums above `1 / tol` count as unbounded.
    pub bounded_rows: ConditionStatus,
    /// `sum_k a_nk -> 1`.
    pub row_sums: ConditionStatus,
    /// `a_nk -> 0` for each fixed `k`.
    pub columns: ConditionStatus,
}

impl ToeplitzReport {
    pub fn any_refuted(&self) -> bool {
        self.bounded_rows.is_refuted() || self.row_sums.is_refuted() || self.columns.is_refuted()
    }

    pub fn conditions(&self) -> [(&'static str, ConditionStatus); 3] {
        [
            ("bounded_rows", self.bounded_rows),
            ("row_sums", self.row_sums),
            ("columns", self.columns),
        ]
    }
}

fn sampled_rows(depth: u64) -> Vec<u64> {
    let mut rows: Vec<u64> = (1..=depth.min(32)).collect();
    let mut n = 32u64;
    while n < depth {
        n = (n * 3 / 2).min(depth);
        rows.push(n);
    }
    rows.push(depth / 2);
    rows.push(depth);
    rows.sort_unstable();
    rows.dedup();
    rows
}

/// Gathers evidence for the three conditions without judging declared flags.
pub fn toeplitz_evidence(a: &SummabilityMatrix, depth: u64, tol: f64) -> Result<ToeplitzReport> {
    if depth < 10 {
        return Err(Error::InvalidInput(format!(
            "depth must be at least 10, got {depth}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let rows = sampled_rows(depth);
    let half = depth / 2;

    let mut abs_sums = Vec::with_capacity(rows.len());
    let mut sums = Vec::with_capacity(rows.len());
    for &n in &rows {
        abs_sums.push((n, abs_row_sum(a, n)?));
        sums.push((n, a.row_apply(n, 1.0, |_| 1.0)?));
    }

    let cap = 1.0 / tol;
    let bounded_rows = match abs_sums.iter().find(|(_, s)| *s > cap) {
        Some(&(n, value)) => ConditionStatus::Refuted(ToeplitzWitness::Row { n, value }),
        None => ConditionStatus::Consistent,
    };

    let dev = |n: u64| {
        sums.iter()
            .find(|(m, _)| *m == n)
            .map(|(_, s)| (s - 1.0).abs())
            .unwrap()
    };
    let (dev_half, dev_last) = (dev(half), dev(depth));
    let row_sums = if dev_last > tol && dev_last >= dev_half - tol {
        // earliest sampled row after which every sampled row violates
        let mut first = depth;
        for &(n, s) in sums.iter().rev() {
            if (s - 1.0).abs() > tol {
                first = n;
            } else {
                break;
            }
        }
        let value = sums.iter().find(|(m, _)| *m == first).unwrap().1;
        ConditionStatus::Refuted(ToeplitzWitness::Row { n: first, value })
    } else {
        ConditionStatus::Consistent
    };

    let mut columns = ConditionStatus::Consistent;
    for k in 1..=CHECKED_COLUMNS.min(depth) {
        let last = a.entry(depth, k).abs();
        let earlier = a.entry(half, k).abs();
        if last > tol && last >= earlier - tol {
            columns = ConditionStatus::Refuted(ToeplitzWitness::Column {
                k,
                value: a.entry(depth, k),
            });
            break;
        }
    }

    Ok(ToeplitzReport {
        matrix: a.name().to_string(),
        depth,
        tol,
        bounded_rows,
        row_sums,
        columns,
    })
}

fn abs_row_sum(a: &SummabilityMatrix, n: u64) -> Result<f64> {
    // row_apply multiplies entries by f; |a_nk| = a_nk * sign(a_nk)
    a.row_apply(n, 1.0, |k| a.entry(n, k).signum())
}

/// Checks the three Toeplitz conditions; a refuted declared-regular matrix is an error.
pub fn toeplitz_falsify(a: &SummabilityMatrix, depth: u64, tol: f64) -> Result<ToeplitzReport> {
    let report = toeplitz_evidence(a, depth, tol)?;
    if a.declared_regular() && report.any_refuted() {
        let detail = report
            .conditions()
            .iter()
            .filter_map(|(name, status)| match status {
                ConditionStatus::Refuted(w) => Some(format!("{name}: {w}")),
                ConditionStatus::Consistent => None,
            })
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::DeclaredRegularContradiction {
            matrix: a.name().to_string(),
            detail,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summability::{Doctored, RowShape};
    use std::sync::Arc;

    #[test]
    fn builtins_are_consistent() {
        for m in [
            SummabilityMatrix::cesaro(),
            SummabilityMatrix::identity(),
            SummabilityMatrix::riesz(vec![1.0]).unwrap(),
            SummabilityMatrix::riesz(vec![2.0, 0.5, 1.0]).unwrap(),
        ] {
            let r = toeplitz_falsify(&m, 10_000, 1e-6).unwrap();
            assert!(!r.any_refuted(), "{r:?}");
        }
    }

    #[test]
    fn row_sum_two_is_refuted() {
        let m = SummabilityMatrix::doctored(Doctored::RowSumTwo);
        let r = toeplitz_evidence(&m, 100, 1e-6).unwrap();
        assert_eq!(
            r.row_sums,
            ConditionStatus::Refuted(ToeplitzWitness::Row { n: 1, value: 2.0 })
        );
        assert!(!r.columns.is_refuted());
        assert!(matches!(
            toeplitz_falsify(&m, 100, 1e-6),
            Err(Error::DeclaredRegularContradiction { .. })
        ));
    }

    #[test]
    fn sticky_column_is_refuted() {
        let m = SummabilityMatrix::doctored(Doctored::StickyColumn);
        let r = toeplitz_evidence(&m, 100, 1e-6).unwrap();
        assert_eq!(
            r.columns,
            ConditionStatus::Refuted(ToeplitzWitness::Column { k: 1, value: 1.0 })
        );
        assert!(!r.row_sums.is_refuted());
        assert!(toeplitz_falsify(&m, 100, 1e-6).is_err());
    }

    #[test]
    fn undeclared_matrix_reports_without_error() {
        let m = SummabilityMatrix::custom(
            "growing",
            |n, k| if k <= n { 1.0 } else { 0.0 },
            RowShape::Finite(Arc::new(|n| (1, n))),
            false,
            true,
        );
        let r = toeplitz_falsify(&m, 100, 0.05).unwrap();
        assert!(r.bounded_rows.is_refuted());
        assert!(r.row_sums.is_refuted());
        assert!(r.columns.is_refuted());
    }

    #[test]
    fn slowly_converging_rows_stay_consistent() {
        // row sums 1 + 1/n
        let m = SummabilityMatrix::custom(
            "slow",
            |n, k| {
                if k <= n {
                    (1.0 + 1.0 / n as f64) / n as f64
                } else {
                    0.0
                }
            },
            RowShape::Finite(Arc::new(|n| (1, n))),
            true,
            true,
        );
        assert!(toeplitz_falsify(&m, 1000, 1e-6).is_ok());
    }

    #[test]
    fn shallow_depth_rejected() {
        assert!(toeplitz_evidence(&SummabilityMatrix::cesaro(), 5, 1e-6).is_err());
    }
}
