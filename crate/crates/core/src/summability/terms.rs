//! Row-`n` terms of the convergence methods. Each is a finite (or certified
//! truncated) sum, evaluated directly.

use crate::error::{Error, Result};
use crate::seq::{Periodic, SequenceSpec};

use super::matrix::SummabilityMatrix;

/// Which shifts `l` the `F_A` supremum ranges over.
#[derive(Debug, Clone, PartialEq)]
pub enum ShiftSet {
    /// Every `l >= 0`; requires an eventually periodic sequence, where shifts
    /// beyond the preperiod repeat with the period.
    Exhaustive,
    Explicit(Vec<u64>),
}

fn require_positive(a: &SummabilityMatrix) -> Result<()> {
    if a.is_positive() {
        Ok(())
    } else {
        Err(Error::MatrixNotPositive(a.name().to_string()))
    }
}

fn require_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::ExponentNotPositive(format!("p = {p}")))
    }
}

/// `sum_k a_nk s_k`.
pub fn transform(a: &SummabilityMatrix, s: &SequenceSpec, n: u64) -> Result<f64> {
    a.row_apply(n, s.bound(), |k| s.value_at(k))
}

/// `sum_k a_nk |s_k - x|^p`.
pub fn strong_term(a: &SummabilityMatrix, s: &SequenceSpec, x: f64, p: f64, n: u64) -> Result<f64> {
    require_positive(a)?;
    require_exponent(p)?;
    let bound = (s.bound() + x.abs()).powf(p);
    a.row_apply(n, bound, |k| (s.value_at(k) - x).abs().powf(p))
}

/// `sum_k a_nk |s_k - x|^{p_k}` with exponents given as a sequence.
pub fn strong_term_maddox(
    a: &SummabilityMatrix,
    s: &SequenceSpec,
    x: f64,
    exponents: &SequenceSpec,
    n: u64,
) -> Result<f64> {
    require_positive(a)?;
    let exps = check_exponents(exponents)?;
    let base = s.bound() + x.abs();
    let bound = base.max(1.0).powf(exps.bound());
    a.row_apply(n, bound, |k| {
        (s.value_at(k) - x).abs().powf(exps.value_at(k))
    })
}

/// Validates an exponent sequence: eventually periodic and strictly positive.
pub(crate) fn check_exponents(exponents: &SequenceSpec) -> Result<Periodic> {
    let exps = exponents
        .reduce()
        .map_err(|_| Error::ExponentNotPositive("exponents must be eventually periodic".into()))?;
    if exps
        .preperiod()
        .iter()
        .chain(exps.period())
        .any(|&p| !(p > 0.0))
    {
        return Err(Error::ExponentNotPositive(format!("{:?}", exps.period())));
    }
    Ok(exps)
}

/// `sum_k a_nk chi_{B_eps}(k)` where `B_eps = {k : |s_k - x| >= eps}`.
pub fn a_statistical_term(
    a: &SummabilityMatrix,
    s: &SequenceSpec,
    x: f64,
    eps: f64,
    n: u64,
) -> Result<f64> {
    require_positive(a)?;
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!(
            "eps must be positive, got {eps}"
        )));
    }
    a.row_apply(n, 1.0, |k| {
        if (s.value_at(k) - x).abs() >= eps {
            1.0
        } else {
            0.0
        }
    })
}

fn sorted_prefix(s: &SequenceSpec, n: u64) -> Vec<f64> {
    let mut values: Vec<f64> = (1..=n).map(|k| s.value_at(k)).collect();
    values.sort_by(f64::total_cmp);
    values
}

/// `(1/n^2) sum_{i,j <= n} |s_i - s_j|`, in `O(n log n)` via the sorted-order identity
/// `sum_{i,j} |v_i - v_j| = 2 sum_i (2i - n - 1) v_(i)`.
pub fn pre_cauchy_mean_term(s: &SequenceSpec, n: u64) -> f64 {
    assert!(n >= 1);
    let values = sorted_prefix(s, n);
    let n_f = n as f64;
    let total: f64 = values
        .iter()
        .enumerate()
        .map(|(i, v)| (2.0 * (i as f64 + 1.0) - n_f - 1.0) * v)
        .sum();
    (2.0 * total / (n_f * n_f)).max(0.0)
}

/// `(1/n^2) |{(i, j) : i, j <= n, |s_i - s_j| >= eps}|`.
pub fn pre_cauchy_count_term(s: &SequenceSpec, eps: f64, n: u64) -> f64 {
    assert!(n >= 1);
    assert!(eps > 0.0, "eps must be positive");
    let values = sorted_prefix(s, n);
    // for each j, indices i < j with v_j - v_i >= eps form a prefix
    let mut ptr = 0usize;
    let mut unordered = 0u64;
    for j in 0..values.len() {
        while ptr < j && values[j] - values[ptr] >= eps {
            ptr += 1;
        }
        unordered += ptr as u64;
    }
    2.0 * unordered as f64 / (n as f64 * n as f64)
}

/// `sup_{l in shifts} |sum_k a_nk s_{k+l} - x|`.
pub fn fa_term(
    a: &SummabilityMatrix,
    s: &SequenceSpec,
    x: f64,
    n: u64,
    shifts: &ShiftSet,
) -> Result<f64> {
    let shifted = |l: u64| -> Result<f64> {
        let v = a.row_apply(n, s.bound(), |k| s.value_at(k + l))?;
        Ok((v - x).abs())
    };
    match shifts {
        ShiftSet::Exhaustive => {
            let p = s.reduce().map_err(|_| Error::ExhaustiveRequiresPeriodic)?;
            let span = (p.preperiod_len() + p.period_len()) as u64;
            let s = SequenceSpec::EventuallyPeriodic(p);
            let mut best: f64 = 0.0;
            for l in 0..span {
                let v = a.row_apply(n, s.bound(), |k| s.value_at(k + l))?;
                best = best.max((v - x).abs());
            }
            Ok(best)
        }
        ShiftSet::Explicit(ls) => ls
            .iter()
            .try_fold(0.0f64, |acc, &l| Ok(acc.max(shifted(l)?))),
    }
}
