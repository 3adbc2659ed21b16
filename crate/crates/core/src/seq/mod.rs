//! Symbolic bounded sequences.
//!
//! Sequences are 1-based: `value_at(spec, 1)` is the first term. An eventually
//! periodic sequence with preperiod `a_1..a_p` and period `b_1..b_m` has
//! `s_k = a_k` for `k <= p` and `s_k = b_{((k - p - 1) mod m) + 1}` afterwards.

mod intset;
mod json;

pub use intset::{CustomSet, IntegerSet};

use num_integer::Integer;

use crate::error::{Error, Result};

/// An eventually periodic real sequence. The period is never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Periodic {
    preperiod: Vec<f64>,
    period: Vec<f64>,
}

impl Periodic {
    pub fn new(preperiod: Vec<f64>, period: Vec<f64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("period must be nonempty".into()));
        }
        if preperiod.iter().chain(&period).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("sequence values must be finite".into()));
        }
        Ok(Self { preperiod, period })
    }

    pub fn constant(c: f64) -> Self {
        Self {
            preperiod: Vec::new(),
            period: vec![c],
        }
    }

    pub fn preperiod(&self) -> &[f64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[f64] {
        &self.period
    }

    pub fn preperiod_len(&self) -> usize {
        self.preperiod.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn value_at(&self, k: u64) -> f64 {
        assert!(k >= 1, "sequences are 1-based");
        let p = self.preperiod.len() as u64;
        if k <= p {
            self.preperiod[(k - 1) as usize]
        } else {
            self.period[((k - p - 1) % self.period.len() as u64) as usize]
        }
    }

    /// The largest value attained infinitely often.
    pub fn limsup(&self) -> f64 {
        self.period
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn liminf(&self) -> f64 {
        self.period.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn mean(&self) -> f64 {
        self.period.iter().sum::<f64>() / self.period.len() as f64
    }

    pub fn bound(&self) -> f64 {
        self.preperiod
            .iter()
            .chain(&self.period)
            .fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// True when the tail is a single repeated value.
    pub fn is_eventually_constant(&self, tol: f64) -> bool {
        let first = self.period[0];
        self.period.iter().all(|v| (v - first).abs() <= tol)
    }

    /// Shrinks the period to its minimal length. The preperiod is left alone.
    pub fn with_minimal_period(mut self) -> Self {
        let m = self.period.len();
        for d in 1..=m {
            if m % d == 0 && (d..m).all(|i| self.period[i] == self.period[i - d]) {
                self.period.truncate(d);
                break;
            }
        }
        self
    }

    /// Evaluates the common tail window `(start, start + len]` shared by both
    /// sequences, where both are already periodic.
    pub fn common_tail(&self, other: &Periodic) -> (u64, u64) {
        let start = self.preperiod_len().max(other.preperiod_len()) as u64;
        let len = self.period_len().lcm(&other.period_len()) as u64;
        (start, len)
    }

    /// Values on `(preperiod_len, preperiod_len + period_len]`, one full block.
    pub fn tail_block(&self) -> impl Iterator<Item = f64> + '_ {
        self.period.iter().copied()
    }
}

/// A symbolic bounded scalar sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec {
    EventuallyPeriodic(Periodic),
    SparseIndicator {
        support: IntegerSet,
        on_value: f64,
        off_value: f64,
    },
    LinearCombo {
        coefficients: Vec<f64>,
        parts: Vec<SequenceSpec>,
    },
}

/// The eventually periodic bulk of a sequence plus jump terms supported on sparse sets:
/// `s = periodic + sum_i jump_i * chi_{set_i}`.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub periodic: Periodic,
    pub jumps: Vec<(f64, IntegerSet)>,
}

impl Skeleton {
    /// Jump sizes grouped by support set; zero groups dropped.
    pub fn grouped_jumps(&self) -> Vec<(IntegerSet, f64)> {
        let mut groups: Vec<(IntegerSet, f64)> = Vec::new();
        for (c, set) in &self.jumps {
            match groups.iter_mut().find(|(s, _)| s == set) {
                Some((_, total)) => *total += c,
                None => groups.push((set.clone(), *c)),
            }
        }
        groups.retain(|(_, c)| *c != 0.0);
        groups
    }
}

impl SequenceSpec {
    pub fn periodic(preperiod: Vec<f64>, period: Vec<f64>) -> Result<Self> {
        Periodic::new(preperiod, period).map(SequenceSpec::EventuallyPeriodic)
    }

    pub fn constant(c: f64) -> Self {
        SequenceSpec::EventuallyPeriodic(Periodic::constant(c))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// `(1, 0, 1, 0, ...)`, with `s_1 = 1`.
    pub fn alternating_ones() -> Self {
        SequenceSpec::EventuallyPeriodic(Periodic {
            preperiod: Vec::new(),
            period: vec![1.0, 0.0],
        })
    }

    /// `(-1)^k`, with `s_1 = -1`.
    pub fn alternating_sign() -> Self {
        SequenceSpec::EventuallyPeriodic(Periodic {
            preperiod: Vec::new(),
            period: vec![-1.0, 1.0],
        })
    }

    pub fn indicator(support: IntegerSet, on_value: f64, off_value: f64) -> Self {
        SequenceSpec::SparseIndicator {
            support,
            on_value,
            off_value,
        }
    }

    /// Indicator of the perfect squares, `s_1 = 1`.
    pub fn squares() -> Self {
        Self::indicator(IntegerSet::Squares, 1.0, 0.0)
    }

    pub fn combo(coefficients: Vec<f64>, parts: Vec<SequenceSpec>) -> Result<Self> {
        if coefficients.len() != parts.len() {
            return Err(Error::DimensionMismatch {
                expected: parts.len(),
                got: coefficients.len(),
            });
        }
        Ok(SequenceSpec::LinearCombo {
            coefficients,
            parts,
        })
    }

    pub fn value_at(&self, k: u64) -> f64 {
        match self {
            SequenceSpec::EventuallyPeriodic(p) => p.value_at(k),
            SequenceSpec::SparseIndicator {
                support,
                on_value,
                off_value,
            } => {
                if support.contains(k) {
                    *on_value
                } else {
                    *off_value
                }
            }
            SequenceSpec::LinearCombo {
                coefficients,
                parts,
            } => coefficients
                .iter()
                .zip(parts)
                .map(|(c, p)| c * p.value_at(k))
                .sum(),
        }
    }

    /// A finite bound on `sup_k |s_k|`.
    pub fn bound(&self) -> f64 {
        match self {
            SequenceSpec::EventuallyPeriodic(p) => p.bound(),
            SequenceSpec::SparseIndicator {
                on_value,
                off_value,
                ..
            } => on_value.abs().max(off_value.abs()),
            SequenceSpec::LinearCombo {
                coefficients,
                parts,
            } => coefficients
                .iter()
                .zip(parts)
                .map(|(c, p)| c.abs() * p.bound())
                .sum(),
        }
    }

    pub fn as_periodic(&self) -> Option<&Periodic> {
        match self {
            SequenceSpec::EventuallyPeriodic(p) => Some(p),
            _ => None,
        }
    }

    /// True if the spec is eventually periodic or a combination of such.
    pub fn is_exact(&self) -> bool {
        match self {
            SequenceSpec::EventuallyPeriodic(_) => true,
            SequenceSpec::SparseIndicator { .. } => false,
            SequenceSpec::LinearCombo { parts, .. } => parts.iter().all(SequenceSpec::is_exact),
        }
    }

    /// Reduces to a single eventually periodic sequence.
    ///
    /// Combinations get preperiod length equal to the longest part preperiod and
    /// a period of length `lcm` of the part periods, then shrunk to the minimal period.
    pub fn reduce(&self) -> Result<Periodic> {
        match self {
            SequenceSpec::EventuallyPeriodic(p) => Ok(p.clone()),
            SequenceSpec::SparseIndicator { support, .. } => Err(Error::NotClosed(format!(
                "sparse indicator on {}",
                support.name()
            ))),
            SequenceSpec::LinearCombo {
                coefficients,
                parts,
            } => {
                let reduced = parts
                    .iter()
                    .map(SequenceSpec::reduce)
                    .collect::<Result<Vec<_>>>()?;
                Ok(combine_periodic(coefficients, &reduced))
            }
        }
    }

    /// Like [`reduce`](Self::reduce) but wrapped back into a spec.
    pub fn reduce_combo(&self) -> Result<SequenceSpec> {
        self.reduce().map(SequenceSpec::EventuallyPeriodic)
    }

    pub fn limsup_exact(&self) -> Result<f64> {
        self.reduce_exact().map(|p| p.limsup())
    }

    pub fn period_mean(&self) -> Result<f64> {
        self.reduce_exact().map(|p| p.mean())
    }

    fn reduce_exact(&self) -> Result<Periodic> {
        self.reduce()
            .map_err(|_| Error::NotExactlyComputable(self.describe()))
    }

    /// Splits the sequence into an eventually periodic part plus jumps on sparse
    /// supports. Always succeeds for the three variants.
    pub fn skeleton(&self) -> Skeleton {
        let mut leaves = Vec::new();
        self.collect_leaves(1.0, &mut leaves);
        let mut coefficients = Vec::new();
        let mut periodic = Vec::new();
        let mut jumps = Vec::new();
        for (c, leaf) in leaves {
            match leaf {
                SequenceSpec::EventuallyPeriodic(p) => {
                    coefficients.push(c);
                    periodic.push(p.clone());
                }
                SequenceSpec::SparseIndicator {
                    support,
                    on_value,
                    off_value,
                } => {
                    coefficients.push(c * off_value);
                    periodic.push(Periodic::constant(1.0));
                    jumps.push((c * (on_value - off_value), support.clone()));
                }
                SequenceSpec::LinearCombo { .. } => unreachable!("leaves are never combos"),
            }
        }
        let periodic = if periodic.is_empty() {
            Periodic::constant(0.0)
        } else {
            combine_periodic(&coefficients, &periodic)
        };
        Skeleton { periodic, jumps }
    }

    fn collect_leaves<'a>(&'a self, scale: f64, out: &mut Vec<(f64, &'a SequenceSpec)>) {
        match self {
            SequenceSpec::LinearCombo {
                coefficients,
                parts,
            } => {
                for (c, p) in coefficients.iter().zip(parts) {
                    p.collect_leaves(scale * c, out);
                }
            }
            leaf => out.push((scale, leaf)),
        }
    }

    /// Short human-readable label.
    pub fn describe(&self) -> String {
        match self {
            SequenceSpec::EventuallyPeriodic(p) => {
                format!("periodic(pre={:?}, period={:?})", p.preperiod, p.period)
            }
            SequenceSpec::SparseIndicator {
                support,
                on_value,
                off_value,
            } => format!(
                "indicator({}, on={on_value}, off={off_value})",
                support.name()
            ),
            SequenceSpec::LinearCombo {
                coefficients,
                parts,
            } => {
                let terms: Vec<String> = coefficients
                    .iter()
                    .zip(parts)
                    .map(|(c, p)| format!("{c}*{}", p.describe()))
                    .collect();
                format!("combo({})", terms.join(" + "))
            }
        }
    }
}

fn combine_periodic(coefficients: &[f64], parts: &[Periodic]) -> Periodic {
    let pre_len = parts.iter().map(Periodic::preperiod_len).max().unwrap_or(0);
    let period_len = parts
        .iter()
        .map(Periodic::period_len)
        .fold(1usize, |a, b| a.lcm(&b));
    let eval = |k: u64| -> f64 {
        coefficients
            .iter()
            .zip(parts)
            .map(|(c, p)| c * p.value_at(k))
            .sum()
    };
    let preperiod = (1..=pre_len as u64).map(eval).collect();
    let period = (pre_len as u64 + 1..=(pre_len + period_len) as u64)
        .map(eval)
        .collect();
    Periodic { preperiod, period }.with_minimal_period()
}

/// A bounded sequence in `R^d`, given coordinatewise.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSequence {
    coords: Vec<SequenceSpec>,
}

impl VectorSequence {
    pub fn new(coords: Vec<SequenceSpec>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput(
                "vector sequence needs dimension >= 1".into(),
            ));
        }
        Ok(Self { coords })
    }

    /// The sequence that is constantly `x`.
    pub fn constant(x: &[f64]) -> Result<Self> {
        Self::new(x.iter().map(|&c| SequenceSpec::constant(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[SequenceSpec] {
        &self.coords
    }

    /// Common coordinate bound `R`.
    pub fn bound(&self) -> f64 {
        self.coords.iter().fold(0.0, |acc, c| acc.max(c.bound()))
    }

    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(SequenceSpec::is_exact)
    }

    pub fn value_at(&self, k: u64) -> Vec<f64> {
        self.coords.iter().map(|c| c.value_at(k)).collect()
    }
}

/// The scalar sequence `k -> <x_star, x_k>`; reduced to eventually periodic form when exact.
pub fn apply_functional(x_star: &[f64], xs: &VectorSequence) -> Result<SequenceSpec> {
    if x_star.len() != xs.dim() {
        return Err(Error::DimensionMismatch {
            expected: xs.dim(),
            got: x_star.len(),
        });
    }
    let combo = SequenceSpec::LinearCombo {
        coefficients: x_star.to_vec(),
        parts: xs.coords.clone(),
    };
    if xs.is_exact() {
        combo.reduce_combo()
    } else {
        Ok(combo)
    }
}
