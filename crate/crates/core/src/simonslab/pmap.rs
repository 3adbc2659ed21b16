use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::seq::{Periodic, SequenceSpec};
use crate::summability::{
    fa_term, pair_gap_mean, pre_cauchy_mean_term, strong_term, strong_term_maddox, DensityClass,
    MatrixKind, ShiftSet, SummabilityMatrix,
};

/// How trustworthy a computed value is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Accuracy {
    /// Closed form.
    Exact,
    /// Evaluated at finite depth.
    Numeric,
    /// Sampled geometry (ball directions).
    Approximate,
}

impl Accuracy {
    pub fn label(self) -> &'static str {
        match self {
            Accuracy::Exact => "exact",
            Accuracy::Numeric => "numeric",
            Accuracy::Approximate => "approximate",
        }
    }
}

#[derive(Debug, Clone)]
pub enum PMapKind {
    /// `P_n(s) = |s_n|`.
    Identity,
    /// `sum_k a_nk |s_k|^p`.
    StrongMatrix { matrix: SummabilityMatrix, p: f64 },
    /// `(sum_k a_nk |s_k|^p)^(1/p)`.
    StrongMatrixRoot { matrix: SummabilityMatrix, p: f64 },
    /// `sum_k a_nk |s_k|^(p_k)` with `1 <= p_k <= r`.
    Maddox {
        matrix: SummabilityMatrix,
        exponents: SequenceSpec,
    },
    /// `(1/n^2) sum_{i,j <= n} |s_i - s_j|`.
    PreCauchyMean,
    /// `sup_l |sum_k a_nk s_{k+l}|`.
    FaShiftSup {
        matrix: SummabilityMatrix,
        shifts: ShiftSet,
    },
    /// `P_n = 0`.
    Zero,
}

/// A map `P` together with its quasi-additivity constant `M`.
#[derive(Debug, Clone)]
pub struct PMapSpec {
    kind: PMapKind,
    /// Largest exponent, cached for Maddox.
    r: f64,
    declared_m: Option<f64>,
}

fn require_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::ExponentNotPositive(format!(
            "P-map exponent must be >= 1, got {p}"
        )))
    }
}

fn require_positive(a: &SummabilityMatrix) -> Result<()> {
    if a.is_positive() {
        Ok(())
    } else {
        Err(Error::MatrixNotPositive(a.name().to_string()))
    }
}

impl PMapSpec {
    fn with_kind(kind: PMapKind) -> Self {
        Self {
            kind,
            r: 1.0,
            declared_m: None,
        }
    }

    pub fn identity() -> Self {
        Self::with_kind(PMapKind::Identity)
    }

    pub fn zero() -> Self {
        Self::with_kind(PMapKind::Zero)
    }

    pub fn pre_cauchy_mean() -> Self {
        Self::with_kind(PMapKind::PreCauchyMean)
    }

    pub fn strong(matrix: SummabilityMatrix, p: f64) -> Result<Self> {
        require_positive(&matrix)?;
        require_p(p)?;
        Ok(Self::with_kind(PMapKind::StrongMatrix { matrix, p }))
    }

    pub fn strong_root(matrix: SummabilityMatrix, p: f64) -> Result<Self> {
        require_positive(&matrix)?;
        require_p(p)?;
        Ok(Self::with_kind(PMapKind::StrongMatrixRoot { matrix, p }))
    }

    pub fn maddox(matrix: SummabilityMatrix, exponents: SequenceSpec) -> Result<Self> {
        require_positive(&matrix)?;
        let exps = exponents.reduce().map_err(|_| {
            Error::ExponentNotPositive("exponents must be eventually periodic".into())
        })?;
        let values: Vec<f64> = exps
            .preperiod()
            .iter()
            .chain(exps.period())
            .copied()
            .collect();
        for &p in &values {
            require_p(p)?;
        }
        let r = values.iter().copied().fold(1.0, f64::max);
        Ok(Self {
            kind: PMapKind::Maddox { matrix, exponents },
            r,
            declared_m: None,
        })
    }

    pub fn fa_shift_sup(matrix: SummabilityMatrix, shifts: ShiftSet) -> Self {
        Self::with_kind(PMapKind::FaShiftSup { matrix, shifts })
    }

    /// Overrides `M`, e.g. to audit a deliberately wrong constant.
    pub fn with_declared_m(mut self, m: f64) -> Self {
        self.declared_m = Some(m);
        self
    }

    pub fn kind(&self) -> &PMapKind {
        &self.kind
    }

    /// The constant the kind provably satisfies.
    pub fn natural_m(&self) -> f64 {
        match &self.kind {
            PMapKind::StrongMatrix { p, .. } => 2f64.powf(p - 1.0),
            PMapKind::Maddox { .. } => 2f64.powf(self.r - 1.0),
            _ => 1.0,
        }
    }

    /// `M` used by the checks: the declared override, else [`natural_m`](Self::natural_m).
    pub fn m(&self) -> f64 {
        self.declared_m.unwrap_or_else(|| self.natural_m())
    }

    pub fn declared_m(&self) -> Option<f64> {
        self.declared_m
    }

    /// `sup p_k` for Maddox, `p` for the strong kinds, 1 otherwise.
    pub fn max_exponent(&self) -> f64 {
        match &self.kind {
            PMapKind::StrongMatrix { p, .. } | PMapKind::StrongMatrixRoot { p, .. } => *p,
            PMapKind::Maddox { .. } => self.r,
            _ => 1.0,
        }
    }

    pub fn matrix(&self) -> Option<&SummabilityMatrix> {
        match &self.kind {
            PMapKind::StrongMatrix { matrix, .. }
            | PMapKind::StrongMatrixRoot { matrix, .. }
            | PMapKind::Maddox { matrix, .. }
            | PMapKind::FaShiftSup { matrix, .. } => Some(matrix),
            _ => None,
        }
    }
}

impl fmt::Display for PMapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PMapKind::Identity => f.write_str("identity"),
            PMapKind::StrongMatrix { matrix, p } => {
                write!(f, "strong_matrix({};p={p})", matrix.name())
            }
            PMapKind::StrongMatrixRoot { matrix, p } => {
                write!(f, "strong_matrix_root({};p={p})", matrix.name())
            }
            PMapKind::Maddox { matrix, .. } => write!(f, "maddox({};r={})", matrix.name(), self.r),
            PMapKind::PreCauchyMean => f.write_str("pre_cauchy_mean"),
            PMapKind::FaShiftSup { matrix, .. } => write!(f, "fa_shift_sup({})", matrix.name()),
            PMapKind::Zero => f.write_str("zero"),
        }
    }
}

/// `P_n(s)`.
pub fn pmap_term(pm: &PMapSpec, s: &SequenceSpec, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("row index must be >= 1".into()));
    }
    match &pm.kind {
        PMapKind::Identity => Ok(s.value_at(n).abs()),
        PMapKind::StrongMatrix { matrix, p } => strong_term(matrix, s, 0.0, *p, n),
        PMapKind::StrongMatrixRoot { matrix, p } => {
            Ok(strong_term(matrix, s, 0.0, *p, n)?.powf(1.0 / p))
        }
        PMapKind::Maddox { matrix, exponents } => strong_term_maddox(matrix, s, 0.0, exponents, n),
        PMapKind::PreCauchyMean => Ok(pre_cauchy_mean_term(s, n)),
        PMapKind::FaShiftSup { matrix, shifts } => fa_term(matrix, s, 0.0, n, shifts),
        PMapKind::Zero => Ok(0.0),
    }
}

/// A limsup together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimsupValue {
    pub value: f64,
    pub accuracy: Accuracy,
}

/// Rows sampled by the numeric limsup estimate: five points in `[depth/2, depth]`.
pub(crate) fn numeric_rows(depth: u64) -> Vec<u64> {
    let mut rows: Vec<u64> = (4..=8).map(|i| (depth * i / 8).max(1)).collect();
    rows.dedup();
    rows
}

/// Applies `f(k, values at k)` pointwise to periodic sequences, yielding a periodic sequence.
pub(crate) fn zip_periodic(parts: &[&Periodic], f: impl Fn(u64, &[f64]) -> f64) -> Periodic {
    let start = parts.iter().map(|p| p.preperiod_len()).max().unwrap_or(0) as u64;
    let len = parts
        .iter()
        .map(|p| p.period_len())
        .fold(1, |a, b| a.lcm(&b)) as u64;
    let at = |k: u64| {
        let vals: Vec<f64> = parts.iter().map(|p| p.value_at(k)).collect();
        f(k, &vals)
    };
    let pre = (1..=start).map(at).collect();
    let period = (start + 1..=start + len).map(at).collect();
    Periodic::new(pre, period).expect("periodic inputs produce a periodic output")
}

/// `lim_n (A t)_n`'s limsup for a periodic `t`, when the matrix family has a closed form.
fn matrix_limsup(a: &SummabilityMatrix, t: &Periodic) -> Option<f64> {
    match a.density_class() {
        DensityClass::Weighted => Some(weighted_tail_mean(a, t, 0)),
        DensityClass::Pointwise => Some(t.limsup()),
        DensityClass::Opaque => None,
    }
}

/// Limit of the A-means of `k -> t_{k+shift}` for a weighted-mean matrix.
fn weighted_tail_mean(a: &SummabilityMatrix, t: &Periodic, shift: u64) -> f64 {
    let start = t.preperiod_len() as u64;
    let len = t.period_len().lcm(&a.weight_period()) as u64;
    let (mut acc, mut total) = (0.0, 0.0);
    for k in start + 1..=start + len {
        let w = a.density_weight(k);
        total += w;
        acc += w * t.value_at(k + shift);
    }
    acc / total
}

fn closed_limsup(pm: &PMapSpec, p: &Periodic) -> Result<Option<f64>> {
    Ok(match &pm.kind {
        PMapKind::Identity => Some(p.tail_block().map(f64::abs).fold(0.0, f64::max)),
        PMapKind::Zero => Some(0.0),
        PMapKind::StrongMatrix { matrix, p: e } => {
            matrix_limsup(matrix, &zip_periodic(&[p], |_, v| v[0].abs().powf(*e)))
        }
        PMapKind::StrongMatrixRoot { matrix, p: e } => {
            matrix_limsup(matrix, &zip_periodic(&[p], |_, v| v[0].abs().powf(*e)))
                .map(|v| v.powf(1.0 / e))
        }
        PMapKind::Maddox { matrix, exponents } => {
            let exps = exponents.reduce()?;
            matrix_limsup(
                matrix,
                &zip_periodic(&[p, &exps], |_, v| v[0].abs().powf(v[1])),
            )
        }
        PMapKind::PreCauchyMean => Some(pair_gap_mean(p)),
        PMapKind::FaShiftSup { matrix, shifts } => {
            if !matches!(shifts, ShiftSet::Exhaustive) {
                return Ok(None);
            }
            match matrix.density_class() {
                // every shift class l mod period has its own weighted limit; the
                // error is uniform in l, so the sup converges to the largest one
                DensityClass::Weighted if matches!(matrix.kind(), MatrixKind::Cesaro) => {
                    Some(p.mean().abs())
                }
                DensityClass::Weighted => {
                    let m = p.period_len() as u64;
                    Some(
                        (0..m)
                            .map(|l| weighted_tail_mean(matrix, p, l).abs())
                            .fold(0.0, f64::max),
                    )
                }
                // sup_{l >= 0} |s_{n+l}| ranges over the whole tail
                DensityClass::Pointwise => Some(p.tail_block().map(f64::abs).fold(0.0, f64::max)),
                DensityClass::Opaque => None,
            }
        }
    })
}

/// `limsup_n P_n(s)`: closed form for eventually periodic input where the kind
/// and matrix allow it, else the maximum over rows in `[depth/2, depth]`.
pub fn pmap_limsup(pm: &PMapSpec, s: &SequenceSpec, depth: u64) -> Result<LimsupValue> {
    if s.is_exact() {
        let p = s.reduce()?;
        if let Some(value) = closed_limsup(pm, &p)? {
            return Ok(LimsupValue {
                value,
                accuracy: Accuracy::Exact,
            });
        }
    }
    let mut value = f64::NEG_INFINITY;
    for n in numeric_rows(depth) {
        value = value.max(pmap_term(pm, s, n)?);
    }
    Ok(LimsupValue {
        value,
        accuracy: Accuracy::Numeric,
    })
}
