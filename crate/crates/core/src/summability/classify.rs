//! Convergence classifiers.
//!
//! Every classifier first tries a closed form built on the periodic skeleton
//! of the sequence (see [`SequenceSpec::skeleton`]): the eventually periodic
//! bulk decides the verdict whenever the sparse jumps are negligible for the
//! method at hand. Anything else falls back to evaluating the method's term
//! at sampled depths, labeled numeric, or `Unknown`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::seq::{IntegerSet, Periodic, SequenceSpec, Skeleton};
use crate::tolerance::{Tolerances, DEFAULT_DEPTH};

use super::matrix::{DensityClass, SummabilityMatrix};
use super::terms::{
    a_statistical_term, check_exponents, fa_term, pre_cauchy_count_term, pre_cauchy_mean_term,
    strong_term, strong_term_maddox, transform, ShiftSet,
};
use super::verdict::{
    ConvergenceVerdict, Exactness, Justification, Method, VerdictStatus, Witness,
};

/// Depth and tolerance for numeric verdicts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    pub depth: u64,
    /// Numeric-path tolerance.
    pub tol: f64,
    /// Closed-form comparisons (constant tails, equal limits).
    pub exact_tol: f64,
    /// Evaluate the method term at `depth` for exact verdicts too.
    pub diagnostics: bool,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self {
            depth: DEFAULT_DEPTH,
            tol: Tolerances::NUMERIC,
            exact_tol: Tolerances::EXACT,
            diagnostics: true,
        }
    }
}

impl NumericOptions {
    pub fn with_depth(mut self, depth: u64) -> Self {
        self.depth = depth;
        self
    }

    /// `eps` used by numeric statistical checks.
    fn stat_eps(&self) -> f64 {
        10.0 * self.tol
    }

    fn sample_depths(&self) -> Vec<u64> {
        let mut depths: Vec<u64> = [8, 4, 2, 1]
            .iter()
            .map(|d| (self.depth / d).max(1))
            .collect();
        depths.dedup();
        depths
    }
}

fn require_positive_regular(a: &SummabilityMatrix) -> Result<()> {
    if !a.is_positive() {
        return Err(Error::MatrixNotPositive(a.name().to_string()));
    }
    if !a.declared_regular() {
        return Err(Error::InvalidInput(format!(
            "matrix `{}` is not declared regular",
            a.name()
        )));
    }
    Ok(())
}

/// A-density of the positions of the periodic tail whose value satisfies `pred`.
fn tail_density(a: &SummabilityMatrix, p: &Periodic, pred: impl Fn(f64) -> bool) -> f64 {
    let start = p.preperiod_len() as u64;
    let len = p.period_len().lcm(&a.weight_period()) as u64;
    let (mut hit, mut total) = (0.0, 0.0);
    for k in start + 1..=start + len {
        let w = a.density_weight(k);
        total += w;
        if pred(p.value_at(k)) {
            hit += w;
        }
    }
    hit / total
}

/// A-weighted mean of `f` over the periodic tail.
fn tail_mean(a: &SummabilityMatrix, p: &Periodic, f: impl Fn(u64, f64) -> f64) -> f64 {
    let start = p.preperiod_len() as u64;
    let len = p.period_len().lcm(&a.weight_period()) as u64;
    let (mut acc, mut total) = (0.0, 0.0);
    for k in start + 1..=start + len {
        let w = a.density_weight(k);
        total += w;
        acc += w * f(k, p.value_at(k));
    }
    acc / total
}

/// Mean absolute gap over ordered pairs of period positions.
pub(crate) fn pair_gap_mean(p: &Periodic) -> f64 {
    let period = p.period();
    let m = period.len() as f64;
    let total: f64 = period
        .iter()
        .flat_map(|a| period.iter().map(move |b| (a - b).abs()))
        .sum();
    total / (m * m)
}

fn distinct_values(values: impl IntoIterator<Item = f64>, tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for v in values {
        if !out.iter().any(|u| (u - v).abs() <= tol) {
            out.push(v);
        }
    }
    out
}

fn all_density_zero(groups: &[(IntegerSet, f64)]) -> bool {
    groups.iter().all(|(set, _)| set.has_density_zero())
}

fn jump_tag(
    groups: &[(IntegerSet, f64)],
    none: Justification,
    some: Justification,
) -> Justification {
    if groups.is_empty() {
        none
    } else {
        some
    }
}

/// Ordinary convergence from the skeleton. `None` if a custom set is involved.
fn ordinary_closed_form(sk: &Skeleton, tol: f64) -> Option<VerdictStatus> {
    let groups = sk.grouped_jumps();
    if groups.iter().any(|(set, _)| !set.is_builtin()) {
        return None;
    }
    let p = &sk.periodic;
    Some(if !p.is_eventually_constant(tol) {
        VerdictStatus::Diverges {
            witness: Witness::new(
                "tail oscillates between distinct values",
                Some(p.limsup() - p.liminf()),
            ),
            exactness: Exactness::Exact(Justification::NonConstantTail),
        }
    } else if let Some((set, jump)) = groups.first() {
        VerdictStatus::Diverges {
            witness: Witness::new(format!("jump recurs on {}", set.name()), Some(jump.abs())),
            exactness: Exactness::Exact(Justification::RecurringJumps),
        }
    } else {
        VerdictStatus::ConvergesTo {
            limit: p.period()[0],
            exactness: Exactness::Exact(Justification::ConstantTail),
        }
    })
}

/// Closed form shared by A-statistical, strong A-p and Maddox convergence:
/// on bounded sequences all three converge exactly when the tail is constant
/// off a set of A-density zero.
fn density_closed_form(
    a: &SummabilityMatrix,
    sk: &Skeleton,
    tol: f64,
    deficit: impl Fn(&Periodic, f64) -> f64,
) -> Option<VerdictStatus> {
    let groups = sk.grouped_jumps();
    match a.density_class() {
        DensityClass::Weighted => {
            if !all_density_zero(&groups) {
                return None;
            }
            let p = &sk.periodic;
            if p.is_eventually_constant(tol) {
                Some(VerdictStatus::ConvergesTo {
                    limit: p.period()[0],
                    exactness: Exactness::Exact(jump_tag(
                        &groups,
                        Justification::ConstantTail,
                        Justification::DensityZeroJumps,
                    )),
                })
            } else {
                let best = distinct_values(p.tail_block(), tol)
                    .into_iter()
                    .map(|v| deficit(p, v))
                    .fold(f64::INFINITY, f64::min);
                Some(VerdictStatus::Diverges {
                    witness: Witness::new(
                        "every candidate limit leaves a tail residue class of positive density",
                        Some(best),
                    ),
                    exactness: Exactness::Exact(Justification::NonConstantTail),
                })
            }
        }
        DensityClass::Pointwise => ordinary_closed_form(sk, tol),
        DensityClass::Opaque => None,
    }
}

fn candidate_limits(s: &SequenceSpec, opts: &NumericOptions) -> Vec<f64> {
    let sk = s.skeleton();
    let tail_start = opts.depth.saturating_sub(63).max(1);
    let observed = (tail_start..=opts.depth.max(1)).map(|k| s.value_at(k));
    let mut c = distinct_values(sk.periodic.tail_block().chain(observed), opts.tol);
    c.truncate(16);
    c
}

/// Numeric verdict for "term(x, n) -> 0 for some candidate x".
fn numeric_verdict(
    opts: &NumericOptions,
    candidates: &[f64],
    term: impl Fn(f64, u64) -> Result<f64>,
) -> Result<(VerdictStatus, Vec<(u64, f64)>)> {
    let depths = opts.sample_depths();
    let mut best: Option<(f64, Vec<(u64, f64)>)> = None;
    let mut all_stuck = true;
    for &x in candidates {
        let terms = depths
            .iter()
            .map(|&n| term(x, n).map(|t| (n, t)))
            .collect::<Result<Vec<_>>>()?;
        let first = terms[0].1;
        let last = terms[terms.len() - 1].1;
        if !(last > opts.tol && last >= 0.5 * first) {
            all_stuck = false;
        }
        if best.as_ref().is_none_or(|(_, b)| last < b[b.len() - 1].1) {
            best = Some((x, terms));
        }
    }
    let Some((x, terms)) = best else {
        return Ok((
            VerdictStatus::Unknown {
                depth: opts.depth,
                last_values: Vec::new(),
            },
            Vec::new(),
        ));
    };
    let first = terms[0].1;
    let last = terms[terms.len() - 1].1;
    let status = if last <= opts.tol && last <= first + opts.tol {
        VerdictStatus::ConvergesTo {
            limit: x,
            exactness: Exactness::Numeric,
        }
    } else if all_stuck {
        VerdictStatus::Diverges {
            witness: Witness::new(
                "no candidate limit drives the term below tolerance",
                Some(last),
            ),
            exactness: Exactness::Numeric,
        }
    } else {
        VerdictStatus::Unknown {
            depth: opts.depth,
            last_values: terms.iter().map(|&(_, t)| t).collect(),
        }
    };
    Ok((status, terms))
}

fn diagnostic_at(opts: &NumericOptions, f: impl Fn(u64) -> Result<f64>) -> Result<Vec<(u64, f64)>> {
    if opts.diagnostics {
        Ok(vec![(opts.depth, f(opts.depth)?)])
    } else {
        Ok(Vec::new())
    }
}

/// Reference point for diagnostics: the limit, or the best candidate's density deficit.
fn reference_point(status: &VerdictStatus, sk: &Skeleton) -> f64 {
    match status {
        VerdictStatus::ConvergesTo { limit, .. } => *limit,
        _ => sk.periodic.mean(),
    }
}

/// Ordinary convergence.
pub fn classify_ordinary(s: &SequenceSpec, opts: &NumericOptions) -> Result<ConvergenceVerdict> {
    let sk = s.skeleton();
    let (status, diagnostics) = match ordinary_closed_form(&sk, opts.exact_tol) {
        Some(status) => {
            let d = diagnostic_at(opts, |n| Ok(s.value_at(n)))?;
            (status, d)
        }
        None => {
            let depths = opts.sample_depths();
            let values: Vec<(u64, f64)> = depths.iter().map(|&n| (n, s.value_at(n))).collect();
            let lo = (opts.depth / 2).max(1);
            let tail = (lo..=opts.depth).map(|k| s.value_at(k));
            let (min, max) = tail.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                (a.min(v), b.max(v))
            });
            let status = if max - min <= opts.tol {
                VerdictStatus::ConvergesTo {
                    limit: s.value_at(opts.depth),
                    exactness: Exactness::Numeric,
                }
            } else {
                VerdictStatus::Unknown {
                    depth: opts.depth,
                    last_values: values.iter().map(|&(_, v)| v).collect(),
                }
            };
            (status, values)
        }
    };
    Ok(ConvergenceVerdict {
        method: Method::Ordinary,
        status,
        diagnostics,
    })
}

/// Plain A-summability: `lim_n sum_k a_nk s_k`.
pub fn classify_matrix(
    a: &SummabilityMatrix,
    s: &SequenceSpec,
    opts: &NumericOptions,
) -> Result<ConvergenceVerdict> {
    let method = Method::Matrix(a.name().to_string());
    let sk = s.skeleton();
    let groups = sk.grouped_jumps();
    let closed = match a.density_class() {
        DensityClass::Weighted if all_density_zero(&groups) => Some(VerdictStatus::ConvergesTo {
            limit: tail_mean(a, &sk.periodic, |_, v| v),
            exactness: Exactness::Exact(jump_tag(
                &groups,
                Justification::PeriodicMean,
                Justification::DensityZeroJumps,
            )),
        }),
        DensityClass::Pointwise => ordinary_closed_form(&sk, opts.exact_tol),
        _ => None,
    };
    if let Some(status) = closed {
        let diagnostics = diagnostic_at(opts, |n| transform(a, s, n))?;
        return Ok(ConvergenceVerdict {
            method,
            status,
            diagnostics,
        });
    }
    let diagnostics = opts
        .sample_depths()
        .into_iter()
        .map(|n| transform(a, s, n).map(|v| (n, v)))
        .collect::<Result<Vec<_>>>()?;
    let half = transform(a, s, (opts.depth / 2).max(1))?;
    let last = diagnostics[diagnostics.len() - 1].1;
    let status = if (last - half).abs() <= opts.tol {
        VerdictStatus::ConvergesTo {
            limit: last,
            exactness: Exactness::Numeric,
        }
    } else {
        VerdictStatus::Unknown {
            depth: opts.depth,
            last_values: diagnostics.iter().map(|&(_, v)| v).collect(),
        }
    };
    Ok(ConvergenceVerdict {
        method,
        status,
        diagnostics,
    })
}

/// A-statistical convergence (`A` positive and regular).
pub fn classify_statistical(
    a: &SummabilityMatrix,
    s: &SequenceSpec,
    opts: &NumericOptions,
) -> Result<ConvergenceVerdict> {
    require_positive_regular(a)?;
    let method = Method::Statistical(a.name().to_string());
    let sk = s.skeleton();
    let tol = opts.exact_tol;
    let eps = opts.stat_eps();
    let closed = density_closed_form(a, &sk, tol, |p, v| {
        tail_density(a, p, |u| (u - v).abs() > tol)
    });
    let (status, diagnostics) = match closed {
        Some(status) => {
            let x = reference_point(&status, &sk);
            let d = diagnostic_at(opts, |n| a_statistical_term(a, s, x, eps, n))?;
            (status, d)
        }
        None => numeric_verdict(opts, &candidate_limits(s, opts), |x, n| {
            a_statistical_term(a, s, x, eps, n)
        })?,
    };
    Ok(ConvergenceVerdict {
        method,
        status,
        diagnostics,
    })
}

/// Strong A-p convergence (`A` positive and regular, `p > 0`).
pub fn classify_strong(
    a: &SummabilityMatrix,
    s: &SequenceSpec,
    p: f64,
    opts: &NumericOptions,
) -> Result<ConvergenceVerdict> {
    require_positive_regular(a)?;
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::ExponentNotPositive(format!("p = {p}")));
    }
    let method = Method::Strong {
        matrix: a.name().to_string(),
        p,
    };
    let sk = s.skeleton();
    let closed = density_closed_form(a, &sk, opts.exact_tol, |per, v| {
        tail_mean(a, per, |_, u| (u - v).abs().powf(p))
    });
    let (status, diagnostics) = match closed {
        Some(status) => {
            let x = reference_point(&status, &sk);
            let d = diagnostic_at(opts, |n| strong_term(a, s, x, p, n))?;
            (status, d)
        }
        None => numeric_verdict(opts, &candidate_limits(s, opts), |x, n| {
            strong_term(a, s, x, p, n)
        })?,
    };
    Ok(ConvergenceVerdict {
        method,
        status,
        diagnostics,
    })
}

/// Strong A-p_k convergence with an eventually periodic exponent sequence.
///
/// When `q = inf p_k < 1` the exponents are normalized to `p_k / q`, which
/// does not change the verdict on bounded sequences.
pub fn classify_maddox(
    a: &SummabilityMatrix,
    s: &SequenceSpec,
    exponents: &SequenceSpec,
    opts: &NumericOptions,
) -> Result<ConvergenceVerdict> {
    require_positive_regular(a)?;
    let exps = check_exponents(exponents)?;
    let q = exps
        .preperiod()
        .iter()
        .chain(exps.period())
        .copied()
        .fold(f64::INFINITY, f64::min);
    let exponents = if q < 1.0 {
        let scaled: Vec<f64> = exps.preperiod().iter().map(|p| p / q).collect();
        let period: Vec<f64> = exps.period().iter().map(|p| p / q).collect();
        SequenceSpec::periodic(scaled, period)?
    } else {
        SequenceSpec::EventuallyPeriodic(exps)
    };
    let exps = exponents.reduce()?;
    let method = Method::Maddox {
        matrix: a.name().to_string(),
    };
    let sk = s.skeleton();
    let closed = density_closed_form(a, &sk, opts.exact_tol, |per, v| {
        // exponent and sequence tails share the lcm block
        let (start, len) = per.common_tail(&exps);
        let len = (len as usize).lcm(&a.weight_period()) as u64;
        let (mut acc, mut total) = (0.0, 0.0);
        for k in start + 1..=start + len {
            let w = a.density_weight(k);
            total += w;
            acc += w * (per.value_at(k) - v).abs().powf(exps.value_at(k));
        }
        acc / total
    });
    let (status, diagnostics) = match closed {
        Some(status) => {
            let x = reference_point(&status, &sk);
            let d = diagnostic_at(opts, |n| strong_term_maddox(a, s, x, &exponents, n))?;
            (status, d)
        }
        None => numeric_verdict(opts, &candidate_limits(s, opts), |x, n| {
            strong_term_maddox(a, s, x, &exponents, n)
        })?,
    };
    Ok(ConvergenceVerdict {
        method,
        status,
        diagnostics,
    })
}

/// Statistical pre-Cauchy, decided through the mean term
/// `(1/n^2) sum_{i,j<=n} |s_i - s_j|`. `ConvergesTo { limit: 0 }` means
/// pre-Cauchy; a divergence witness carries the mean-term limit.
pub fn classify_pre_cauchy(s: &SequenceSpec, opts: &NumericOptions) -> Result<ConvergenceVerdict> {
    let sk = s.skeleton();
    let groups = sk.grouped_jumps();
    let mean_at = |n: u64| Ok(pre_cauchy_mean_term(s, n));
    let (status, diagnostics) = if all_density_zero(&groups) {
        let gap = pair_gap_mean(&sk.periodic);
        let just = jump_tag(
            &groups,
            Justification::ConstantTail,
            Justification::DensityZeroJumps,
        );
        let status = if gap <= opts.exact_tol {
            VerdictStatus::ConvergesTo {
                limit: 0.0,
                exactness: Exactness::Exact(just),
            }
        } else {
            VerdictStatus::Diverges {
                witness: Witness::new("mean pairwise gap over the period", Some(gap)),
                exactness: Exactness::Exact(Justification::NonConstantTail),
            }
        };
        (status, diagnostic_at(opts, mean_at)?)
    } else {
        numeric_verdict(opts, &[0.0], |_, n| mean_at(n))?
    };
    Ok(ConvergenceVerdict {
        method: Method::PreCauchy,
        status,
        diagnostics,
    })
}

/// Statistical pre-Cauchy at a single `eps`, decided through the count term
/// `(1/n^2) |{(i, j) : |s_i - s_j| >= eps}|`. `ConvergesTo { limit: 0 }` means the
/// count term vanishes; a divergence witness carries the limiting pair density.
pub fn classify_pre_cauchy_count(
    s: &SequenceSpec,
    eps: f64,
    opts: &NumericOptions,
) -> Result<ConvergenceVerdict> {
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let sk = s.skeleton();
    let groups = sk.grouped_jumps();
    let count_at = |n: u64| Ok(pre_cauchy_count_term(s, eps, n));
    let (status, diagnostics) = if all_density_zero(&groups) {
        let period = sk.periodic.period();
        let far = period
            .iter()
            .flat_map(|a| period.iter().map(move |b| (a - b).abs()))
            .filter(|&g| g >= eps)
            .count();
        let density = far as f64 / (period.len() * period.len()) as f64;
        let status = if far == 0 {
            let just = jump_tag(
                &groups,
                Justification::ConstantTail,
                Justification::DensityZeroJumps,
            );
            VerdictStatus::ConvergesTo {
                limit: 0.0,
                exactness: Exactness::Exact(just),
            }
        } else {
            VerdictStatus::Diverges {
                witness: Witness::new("density of eps-discordant period pairs", Some(density)),
                exactness: Exactness::Exact(Justification::NonConstantTail),
            }
        };
        (status, diagnostic_at(opts, count_at)?)
    } else {
        numeric_verdict(opts, &[0.0], |_, n| count_at(n))?
    };
    Ok(ConvergenceVerdict {
        method: Method::PreCauchy,
        status,
        diagnostics,
    })
}

/// Almost convergence: Cesàro means of shifted windows converging uniformly in the shift.
pub fn classify_almost(s: &SequenceSpec, opts: &NumericOptions) -> Result<ConvergenceVerdict> {
    let verdict = almost_status(s, opts)?;
    Ok(ConvergenceVerdict {
        method: Method::Almost,
        status: verdict.0,
        diagnostics: verdict.1,
    })
}

fn almost_status(
    s: &SequenceSpec,
    opts: &NumericOptions,
) -> Result<(VerdictStatus, Vec<(u64, f64)>)> {
    let sk = s.skeleton();
    let groups = sk.grouped_jumps();
    let mean = sk.periodic.mean();
    let cesaro = SummabilityMatrix::cesaro();
    let skeleton_spec = SequenceSpec::EventuallyPeriodic(sk.periodic.clone());
    let window_dev = |n: u64| fa_term(&cesaro, &skeleton_spec, mean, n, &ShiftSet::Exhaustive);
    if groups.iter().all(|(set, _)| set.is_window_negligible()) {
        let just = jump_tag(
            &groups,
            Justification::PeriodicMean,
            Justification::WindowNegligibleJumps,
        );
        let status = VerdictStatus::ConvergesTo {
            limit: mean,
            exactness: Exactness::Exact(just),
        };
        return Ok((status, diagnostic_at(opts, window_dev)?));
    }
    // custom supports: use declared window bounds at depth
    let mut jump_dev = 0.0;
    for (set, jump) in &groups {
        if set.is_window_negligible() {
            continue;
        }
        match set.maxcount(opts.depth) {
            Some(c) => jump_dev += jump.abs() * c as f64 / opts.depth as f64,
            None => {
                return Ok((
                    VerdictStatus::Unknown {
                        depth: opts.depth,
                        last_values: Vec::new(),
                    },
                    Vec::new(),
                ))
            }
        }
    }
    let dev = window_dev(opts.depth)? + jump_dev;
    let status = if dev <= opts.tol {
        VerdictStatus::ConvergesTo {
            limit: mean,
            exactness: Exactness::Numeric,
        }
    } else {
        VerdictStatus::Unknown {
            depth: opts.depth,
            last_values: vec![dev],
        }
    };
    Ok((status, vec![(opts.depth, dev)]))
}

/// `F_A` convergence. Cesàro reduces to almost convergence and the identity to
/// ordinary convergence; other matrices are evaluated numerically.
pub fn classify_fa(
    a: &SummabilityMatrix,
    s: &SequenceSpec,
    opts: &NumericOptions,
) -> Result<ConvergenceVerdict> {
    let method = Method::Fa(a.name().to_string());
    let (status, diagnostics) = match a.kind() {
        super::MatrixKind::Cesaro => almost_status(s, opts)?,
        super::MatrixKind::Identity => {
            let v = classify_ordinary(s, opts)?;
            (v.status, v.diagnostics)
        }
        _ => {
            let shifts = if s.is_exact() {
                ShiftSet::Exhaustive
            } else {
                ShiftSet::Explicit((0..64).collect())
            };
            let mut candidates = vec![s.skeleton().periodic.mean()];
            candidates.extend(candidate_limits(s, opts));
            let candidates = distinct_values(candidates, opts.tol);
            numeric_verdict(opts, &candidates, |x, n| fa_term(a, s, x, n, &shifts))?
        }
    };
    Ok(ConvergenceVerdict {
        method,
        status,
        diagnostics,
    })
}

/// Outcome of comparing two verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Disagree,
    Inconclusive,
}

/// Side-by-side statistical and strong-p verdicts for one sequence.
#[derive(Debug, Clone)]
pub struct CrossCheckReport {
    pub statistical: ConvergenceVerdict,
    pub strong: ConvergenceVerdict,
    pub statistical_term: f64,
    pub strong_term: f64,
    pub depth: u64,
    pub agreement: Agreement,
    pub violations: Vec<String>,
}

/// Compares two verdicts for the same sequence.
pub fn compare_verdicts(a: &ConvergenceVerdict, b: &ConvergenceVerdict, tol: f64) -> Agreement {
    match (a.limit(), b.limit()) {
        (Some(x), Some(y)) if (x - y).abs() <= tol => Agreement::Agree,
        (Some(_), Some(_)) => Agreement::Disagree,
        _ if a.diverges() && b.diverges() => Agreement::Agree,
        _ if a.is_unknown() || b.is_unknown() => Agreement::Inconclusive,
        _ => Agreement::Disagree,
    }
}

/// Checks both directions of the statistical / strong-p equivalence on a bounded sequence.
pub fn connor_crosscheck(
    s: &SequenceSpec,
    a: &SummabilityMatrix,
    p: f64,
    opts: &NumericOptions,
) -> Result<CrossCheckReport> {
    let quiet = NumericOptions {
        diagnostics: false,
        ..*opts
    };
    let statistical = classify_statistical(a, s, &quiet)?;
    let strong = classify_strong(a, s, p, &quiet)?;
    let x = statistical
        .limit()
        .or(strong.limit())
        .unwrap_or_else(|| s.skeleton().periodic.mean());
    let statistical_term = a_statistical_term(a, s, x, opts.stat_eps(), opts.depth)?;
    let strong_term_value = strong_term(a, s, x, p, opts.depth)?;
    let tol = if statistical.is_exact() && strong.is_exact() {
        opts.exact_tol
    } else {
        opts.tol
    };
    let agreement = compare_verdicts(&statistical, &strong, tol);
    let mut violations = Vec::new();
    if strong.converges() && statistical.diverges() {
        violations.push("strongly convergent but not statistically convergent".to_string());
    }
    if statistical.converges() && strong.diverges() {
        violations
            .push("bounded and statistically convergent but not strongly convergent".to_string());
    }
    if agreement == Agreement::Disagree && violations.is_empty() {
        violations.push("limits differ".to_string());
    }
    Ok(CrossCheckReport {
        statistical,
        strong,
        statistical_term,
        strong_term: strong_term_value,
        depth: opts.depth,
        agreement,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::CustomSet;
    use std::sync::Arc;

    fn opts() -> NumericOptions {
        NumericOptions::default().with_depth(4000)
    }

    fn alt() -> SequenceSpec {
        SequenceSpec::alternating_ones()
    }

    fn assert_converges_exact(v: &ConvergenceVerdict, limit: f64) {
        match &v.status {
            VerdictStatus::ConvergesTo {
                limit: l,
                exactness,
            } => {
                assert!((l - limit).abs() < 1e-12, "{l} != {limit}");
                assert!(exactness.is_exact(), "{v:?}");
            }
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn statistical_examples() {
        let c = SummabilityMatrix::cesaro();
        assert_converges_exact(
            &classify_statistical(&c, &SequenceSpec::squares(), &opts()).unwrap(),
            0.0,
        );
        let v = classify_statistical(&c, &alt(), &opts()).unwrap();
        match v.status {
            VerdictStatus::Diverges { witness, exactness } => {
                assert!(exactness.is_exact());
                assert_eq!(witness.value, Some(0.5));
            }
            other => panic!("{other:?}"),
        }
        assert_converges_exact(
            &classify_statistical(&c, &SequenceSpec::constant(-2.0), &opts()).unwrap(),
            -2.0,
        );
    }

    #[test]
    fn statistical_under_riesz_and_identity() {
        let r = SummabilityMatrix::riesz(vec![1.0, 5.0]).unwrap();
        let s = SequenceSpec::indicator(IntegerSet::PowersOfTwo, 3.0, 1.0);
        assert_converges_exact(&classify_statistical(&r, &s, &opts()).unwrap(), 1.0);
        let i = SummabilityMatrix::identity();
        assert!(classify_statistical(&i, &s, &opts()).unwrap().diverges());
        assert_converges_exact(
            &classify_statistical(
                &i,
                &SequenceSpec::periodic(vec![4.0], vec![2.0]).unwrap(),
                &opts(),
            )
            .unwrap(),
            2.0,
        );
    }

    #[test]
    fn statistical_requires_positive_regular() {
        let m = SummabilityMatrix::custom(
            "loose",
            |n, k| if k <= n { 1.0 / n as f64 } else { 0.0 },
            super::super::RowShape::Finite(Arc::new(|n| (1, n))),
            false,
            true,
        );
        assert!(classify_statistical(&m, &alt(), &opts()).is_err());
    }

    #[test]
    fn numeric_fallback_for_custom_matrix() {
        // Cesàro written as a custom matrix: no closed forms apply
        let m = SummabilityMatrix::custom(
            "cesaro_copy",
            |n, k| if k <= n { 1.0 / n as f64 } else { 0.0 },
            super::super::RowShape::Finite(Arc::new(|n| (1, n))),
            true,
            true,
        );
        let s = SequenceSpec::periodic(vec![9.0], vec![0.25]).unwrap();
        let v = classify_statistical(&m, &s, &opts()).unwrap();
        assert_eq!(v.limit(), Some(0.25));
        assert_eq!(v.exactness(), Some(Exactness::Numeric));
        let v = classify_strong(&m, &alt(), 1.0, &opts()).unwrap();
        assert!(v.diverges());
        assert_eq!(v.exactness(), Some(Exactness::Numeric));
    }

    #[test]
    fn strong_matches_statistical_on_examples() {
        let c = SummabilityMatrix::cesaro();
        for p in [0.5, 1.0, 2.0, 3.0] {
            assert_converges_exact(
                &classify_strong(&c, &SequenceSpec::squares(), p, &opts()).unwrap(),
                0.0,
            );
            assert!(classify_strong(&c, &alt(), p, &opts()).unwrap().diverges());
        }
    }

    #[test]
    fn maddox_examples() {
        let c = SummabilityMatrix::cesaro();
        let exps = SequenceSpec::periodic(vec![], vec![0.5, 2.0]).unwrap();
        assert!(classify_maddox(&c, &alt(), &exps, &opts())
            .unwrap()
            .diverges());
        assert_converges_exact(
            &classify_maddox(&c, &SequenceSpec::squares(), &exps, &opts()).unwrap(),
            0.0,
        );
        let bad = SequenceSpec::periodic(vec![], vec![-1.0]).unwrap();
        assert!(classify_maddox(&c, &alt(), &bad, &opts()).is_err());
    }

    #[test]
    fn pre_cauchy_examples() {
        let v = classify_pre_cauchy(&alt(), &opts()).unwrap();
        match v.status {
            VerdictStatus::Diverges { witness, .. } => assert_eq!(witness.value, Some(0.5)),
            other => panic!("{other:?}"),
        }
        assert_converges_exact(
            &classify_pre_cauchy(&SequenceSpec::constant(4.0), &opts()).unwrap(),
            0.0,
        );
        let s = SequenceSpec::periodic(vec![0.0], vec![3.0, 3.0, 3.0]).unwrap();
        assert_converges_exact(&classify_pre_cauchy(&s, &opts()).unwrap(), 0.0);
    }

    #[test]
    fn pre_cauchy_numeric_for_custom_support() {
        let sparse = CustomSet::new("cubes", |k| {
            let r = (k as f64).cbrt().round() as u64;
            r * r * r == k
        });
        let s = SequenceSpec::indicator(IntegerSet::Custom(sparse), 1.0, 0.0);
        // 2 * 46 / 10^5 falls below the numeric tolerance only at full depth
        assert!(classify_pre_cauchy(&s, &opts()).unwrap().is_unknown());
        let v = classify_pre_cauchy(&s, &NumericOptions::default()).unwrap();
        assert_eq!(v.limit(), Some(0.0));
        assert_eq!(v.exactness(), Some(Exactness::Numeric));
    }

    #[test]
    fn almost_examples() {
        assert_converges_exact(&classify_almost(&alt(), &opts()).unwrap(), 0.5);
        assert_converges_exact(
            &classify_almost(&SequenceSpec::squares(), &opts()).unwrap(),
            0.0,
        );
        assert_converges_exact(
            &classify_almost(&SequenceSpec::constant(7.0), &opts()).unwrap(),
            7.0,
        );
        let unknown = SequenceSpec::indicator(
            IntegerSet::Custom(CustomSet::new("evens", |k| k % 2 == 0)),
            1.0,
            0.0,
        );
        assert!(classify_almost(&unknown, &opts()).unwrap().is_unknown());
    }

    #[test]
    fn almost_with_declared_window_bound() {
        let cubes = CustomSet::new("cubes", |k| {
            let r = (k as f64).cbrt().round() as u64;
            r * r * r == k
        })
        .with_window_bound(|n| (n as f64).cbrt().ceil() as u64 + 1);
        let s = SequenceSpec::indicator(IntegerSet::Custom(cubes), 1.0, 0.0);
        let v = classify_almost(&s, &NumericOptions::default()).unwrap();
        assert_eq!(v.limit(), Some(0.0));
        assert_eq!(v.exactness(), Some(Exactness::Numeric));
    }

    #[test]
    fn ordinary_examples() {
        assert!(classify_ordinary(&alt(), &opts()).unwrap().diverges());
        assert!(classify_ordinary(&SequenceSpec::squares(), &opts())
            .unwrap()
            .diverges());
        assert_converges_exact(
            &classify_ordinary(
                &SequenceSpec::periodic(vec![1.0, 2.0], vec![3.0]).unwrap(),
                &opts(),
            )
            .unwrap(),
            3.0,
        );
        // jumps that cancel leave a constant sequence
        let cancel = SequenceSpec::combo(
            vec![1.0, -1.0],
            vec![SequenceSpec::squares(), SequenceSpec::squares()],
        )
        .unwrap();
        assert_converges_exact(&classify_ordinary(&cancel, &opts()).unwrap(), 0.0);
    }

    #[test]
    fn fa_dispatch() {
        let c = SummabilityMatrix::cesaro();
        assert_converges_exact(&classify_fa(&c, &alt(), &opts()).unwrap(), 0.5);
        assert!(classify_fa(&SummabilityMatrix::identity(), &alt(), &opts())
            .unwrap()
            .diverges());
        // Riesz with weights (1, 3) does not average (1, 0) uniformly over shifts
        let r = SummabilityMatrix::riesz(vec![1.0, 3.0]).unwrap();
        assert!(!classify_fa(&r, &alt(), &opts()).unwrap().converges());
        let r1 = SummabilityMatrix::riesz(vec![1.0]).unwrap();
        let v = classify_fa(&r1, &alt(), &opts()).unwrap();
        assert_eq!(v.limit(), Some(0.5));
    }

    #[test]
    fn matrix_transform_limits() {
        let c = SummabilityMatrix::cesaro();
        assert_converges_exact(&classify_matrix(&c, &alt(), &opts()).unwrap(), 0.5);
        let r = SummabilityMatrix::riesz(vec![1.0, 3.0]).unwrap();
        assert_converges_exact(&classify_matrix(&r, &alt(), &opts()).unwrap(), 0.25);
    }

    #[test]
    fn connor_examples() {
        let c = SummabilityMatrix::cesaro();
        let r = connor_crosscheck(&SequenceSpec::squares(), &c, 2.0, &opts()).unwrap();
        assert_eq!(r.agreement, Agreement::Agree);
        assert_eq!(r.statistical.limit(), Some(0.0));
        assert_eq!(r.strong.limit(), Some(0.0));
        assert!(r.violations.is_empty());
        let r = connor_crosscheck(&alt(), &c, 1.0, &opts()).unwrap();
        assert_eq!(r.agreement, Agreement::Agree);
        assert!(r.statistical.diverges() && r.strong.diverges());
        let r = connor_crosscheck(&SequenceSpec::constant(1.5), &c, 0.7, &opts()).unwrap();
        assert_eq!(r.agreement, Agreement::Agree);
        assert_eq!(r.strong_term, 0.0);
    }
}
