use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

type EntryFn = Arc<dyn Fn(u64, u64) -> f64 + Send + Sync>;
type SupportFn = Arc<dyn Fn(u64) -> (u64, u64) + Send + Sync>;
type TailFn = Arc<dyn Fn(u64, u64) -> f64 + Send + Sync>;

/// Truncation threshold for infinite rows: stop once `tail_bound * sup|f| < TRUNCATION`.
pub const TRUNCATION: f64 = 1e-12;

/// How the nonzero part of a row is located.
#[derive(Clone)]
pub enum RowShape {
    /// `row_support(n) = (k_lo, k_hi)`; entries outside are exactly zero.
    Finite(SupportFn),
    /// `tail_bound(n, K) >= sum_{k > K} |a_nk|`, nonincreasing in `K`.
    Tail(TailFn),
    /// Neither is known; row sums cannot be certified.
    Unbounded,
}

/// Which family a matrix belongs to. Drives the closed-form shortcuts.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixKind {
    Cesaro,
    Identity,
    /// Weighted means `a_nk = w_k / W_n` (`k <= n`), weights repeated periodically.
    Riesz(Vec<f64>),
    /// Deliberately broken fixtures that claim regularity.
    Doctored(Doctored),
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Doctored {
    /// `a_nk = 2/n` for `k <= n`: row sums are 2.
    RowSumTwo,
    /// `a_n1 = 1`, all other entries 0: column 1 never decays.
    StickyColumn,
}

/// How a matrix weighs index sets, as far as closed forms go.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DensityClass {
    /// A-density of a natural-density-zero set is zero and every residue class
    /// has positive A-density (Cesàro, periodic-weight Riesz).
    Weighted,
    /// A-limits are ordinary limits (identity).
    Pointwise,
    Opaque,
}

/// An infinite matrix `A = (a_nk)` given by an entry generator.
#[derive(Clone)]
pub struct SummabilityMatrix {
    name: String,
    kind: MatrixKind,
    entry: EntryFn,
    rows: RowShape,
    declared_regular: bool,
    positive: bool,
}

impl SummabilityMatrix {
    pub fn cesaro() -> Self {
        Self {
            name: "cesaro".into(),
            kind: MatrixKind::Cesaro,
            entry: Arc::new(|n, k| if k <= n { 1.0 / n as f64 } else { 0.0 }),
            rows: RowShape::Finite(Arc::new(|n| (1, n))),
            declared_regular: true,
            positive: true,
        }
    }

    pub fn identity() -> Self {
        Self {
            name: "identity".into(),
            kind: MatrixKind::Identity,
            entry: Arc::new(|n, k| if n == k { 1.0 } else { 0.0 }),
            rows: RowShape::Finite(Arc::new(|n| (n, n))),
            declared_regular: true,
            positive: true,
        }
    }

    /// Riesz means with the given weights repeated periodically.
    pub fn riesz(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidInput(
                "riesz weights must be nonempty and strictly positive".into(),
            ));
        }
        let len = weights.len() as u64;
        let mut prefix = vec![0.0];
        for w in &weights {
            prefix.push(prefix.last().unwrap() + w);
        }
        let block = prefix[weights.len()];
        let w = weights.clone();
        let entry = move |n: u64, k: u64| -> f64 {
            if k > n {
                return 0.0;
            }
            let total = (n / len) as f64 * block + prefix[(n % len) as usize];
            w[((k - 1) % len) as usize] / total
        };
        Ok(Self {
            name: "riesz".into(),
            kind: MatrixKind::Riesz(weights),
            entry: Arc::new(entry),
            rows: RowShape::Finite(Arc::new(|n| (1, n))),
            declared_regular: true,
            positive: true,
        })
    }

    pub fn doctored(which: Doctored) -> Self {
        let (name, entry, rows): (&str, EntryFn, SupportFn) = match which {
            Doctored::RowSumTwo => (
                "doctored_row_sum_two",
                Arc::new(|n, k| if k <= n { 2.0 / n as f64 } else { 0.0 }),
                Arc::new(|n| (1, n)),
            ),
            Doctored::StickyColumn => (
                "doctored_sticky_column",
                Arc::new(|_, k| if k == 1 { 1.0 } else { 0.0 }),
                Arc::new(|_| (1, 1)),
            ),
        };
        Self {
            name: name.into(),
            kind: MatrixKind::Doctored(which),
            entry,
            rows: RowShape::Finite(rows),
            declared_regular: true,
            positive: true,
        }
    }

    /// A code-defined matrix. Flags are taken on trust; [`super::toeplitz_falsify`]
    /// can refute `declared_regular`.
    pub fn custom(
        name: impl Into<String>,
        entry: impl Fn(u64, u64) -> f64 + Send + Sync + 'static,
        rows: RowShape,
        declared_regular: bool,
        positive: bool,
    ) -> Self {
        Self {
            name: name.into(),
            kind: MatrixKind::Custom,
            entry: Arc::new(entry),
            rows,
            declared_regular,
            positive,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &MatrixKind {
        &self.kind
    }

    pub fn declared_regular(&self) -> bool {
        self.declared_regular
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn entry(&self, n: u64, k: u64) -> f64 {
        (self.entry)(n, k)
    }

    pub fn row_shape(&self) -> &RowShape {
        &self.rows
    }

    pub(crate) fn density_class(&self) -> DensityClass {
        match self.kind {
            MatrixKind::Cesaro | MatrixKind::Riesz(_) => DensityClass::Weighted,
            MatrixKind::Identity => DensityClass::Pointwise,
            MatrixKind::Doctored(_) | MatrixKind::Custom => DensityClass::Opaque,
        }
    }

    /// Weight of position `k` in the limiting A-density, for weighted-mean families.
    pub(crate) fn density_weight(&self, k: u64) -> f64 {
        match &self.kind {
            MatrixKind::Riesz(w) => w[((k - 1) % w.len() as u64) as usize],
            _ => 1.0,
        }
    }

    /// Period of [`density_weight`](Self::density_weight).
    pub(crate) fn weight_period(&self) -> usize {
        match &self.kind {
            MatrixKind::Riesz(w) => w.len(),
            _ => 1,
        }
    }

    /// Computes `sum_k a_nk f(k)`, where `|f| <= f_bound`.
    ///
    /// Infinite rows are truncated at the first `K` (doubling from `max(n, 16)`)
    /// with `tail_bound(n, K) * f_bound < TRUNCATION`.
    pub fn row_apply(&self, n: u64, f_bound: f64, f: impl Fn(u64) -> f64) -> Result<f64> {
        assert!(n >= 1, "matrix rows are 1-based");
        let (lo, hi) = match &self.rows {
            RowShape::Finite(support) => support(n),
            RowShape::Tail(tail) => {
                let mut cut = n.max(16);
                while tail(n, cut) * f_bound >= TRUNCATION {
                    cut = cut.checked_mul(2).ok_or_else(|| Error::TailNotBounded {
                        matrix: self.name.clone(),
                        row: n,
                    })?;
                    if cut > 1 << 40 {
                        return Err(Error::TailNotBounded {
                            matrix: self.name.clone(),
                            row: n,
                        });
                    }
                }
                (1, cut)
            }
            RowShape::Unbounded => {
                return Err(Error::TailNotBounded {
                    matrix: self.name.clone(),
                    row: n,
                })
            }
        };
        let mut acc = 0.0;
        for k in lo.max(1)..=hi {
            let a = (self.entry)(n, k);
            if a != 0.0 {
                acc += a * f(k);
            }
        }
        Ok(acc)
    }

    /// Builds a builtin by name.
    pub fn builtin(name: &str, weights: Option<Vec<f64>>) -> Result<Self> {
        match name {
            "cesaro" => Ok(Self::cesaro()),
            "identity" => Ok(Self::identity()),
            "riesz" => Self::riesz(weights.unwrap_or_else(|| vec![1.0])),
            "doctored_row_sum_two" => Ok(Self::doctored(Doctored::RowSumTwo)),
            "doctored_sticky_column" => Ok(Self::doctored(Doctored::StickyColumn)),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

impl fmt::Debug for SummabilityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SummabilityMatrix")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("declared_regular", &self.declared_regular)
            .field("positive", &self.positive)
            .finish_non_exhaustive()
    }
}

/// Builds one of the builtin matrices by name (`cesaro`, `identity`, `riesz`).
pub fn builtin_matrix(name: &str, weights: Option<Vec<f64>>) -> Result<SummabilityMatrix> {
    match name {
        "cesaro" | "identity" | "riesz" => SummabilityMatrix::builtin(name, weights),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

impl Serialize for SummabilityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let weights = match &self.kind {
            MatrixKind::Riesz(w) => Some(w.clone()),
            MatrixKind::Custom => {
                return Err(serde::ser::Error::custom(format!(
                    "custom matrix `{}` is not serializable",
                    self.name
                )))
            }
            _ => None,
        };
        MatrixJson {
            kind: self.name.clone(),
            weights,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SummabilityMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = MatrixJson::deserialize(deserializer)?;
        if json.weights.is_some() && json.kind != "riesz" {
            return Err(serde::de::Error::custom(
                "`weights` is only valid for riesz",
            ));
        }
        SummabilityMatrix::builtin(&json.kind, json.weights).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cesaro_entries() {
        let c = SummabilityMatrix::cesaro();
        assert_eq!(c.entry(3, 2), 1.0 / 3.0);
        assert_eq!(c.entry(2, 3), 0.0);
        assert!(c.is_positive() && c.declared_regular());
    }

    #[test]
    fn identity_entries() {
        let i = builtin_matrix("identity", None).unwrap();
        assert_eq!(i.entry(4, 4), 1.0);
        assert_eq!(i.entry(4, 3), 0.0);
    }

    #[test]
    fn riesz_with_unit_weights_is_cesaro() {
        let r = builtin_matrix("riesz", Some(vec![1.0])).unwrap();
        let c = SummabilityMatrix::cesaro();
        for n in 1..60 {
            for k in 1..70 {
                assert!((r.entry(n, k) - c.entry(n, k)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn riesz_rows_sum_to_one() {
        let r = SummabilityMatrix::riesz(vec![1.0, 3.0, 0.5]).unwrap();
        for n in [1u64, 2, 3, 10, 101] {
            let s = r.row_apply(n, 1.0, |_| 1.0).unwrap();
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert!(SummabilityMatrix::riesz(vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            builtin_matrix("abel", None),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn tail_rows_are_truncated() {
        // a_nk = 2^-k: tail beyond K is 2^-K
        let m = SummabilityMatrix::custom(
            "geometric",
            |_, k| 0.5f64.powi(k as i32),
            RowShape::Tail(Arc::new(|_, cut| 0.5f64.powi(cut as i32))),
            false,
            true,
        );
        let s = m.row_apply(1, 1.0, |_| 1.0).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        let none =
            SummabilityMatrix::custom("opaque", |_, _| 0.0, RowShape::Unbounded, false, true);
        assert!(matches!(
            none.row_apply(1, 1.0, |_| 1.0),
            Err(Error::TailNotBounded { .. })
        ));
    }

    #[test]
    fn json_forms() {
        let m: SummabilityMatrix =
            serde_json::from_str(r#"{"kind":"riesz","weights":[1,2]}"#).unwrap();
        assert_eq!(m.kind(), &MatrixKind::Riesz(vec![1.0, 2.0]));
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"{"kind":"riesz","weights":[1.0,2.0]}"#
        );
        let c: SummabilityMatrix = serde_json::from_str(r#"{"kind":"cesaro"}"#).unwrap();
        assert_eq!(c.name(), "cesaro");
        assert!(
            serde_json::from_str::<SummabilityMatrix>(r#"{"kind":"cesaro","weights":[1]}"#)
                .is_err()
        );
        assert!(serde_json::from_str::<SummabilityMatrix>(r#"{"kind":"nope"}"#).is_err());
        let custom = SummabilityMatrix::custom("x", |_, _| 0.0, RowShape::Unbounded, false, true);
        assert!(serde_json::to_string(&custom).is_err());
    }
}
