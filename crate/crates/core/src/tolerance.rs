use serde::{Deserialize, Serialize};

/// Default depth for numeric verdicts.
pub const DEFAULT_DEPTH: u64 = 100_000;

/// The three tolerance regimes: closed-form paths, numeric evaluation at
/// depth, and sampled geometry on balls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub exact: f64,
    pub numeric: f64,
    pub sampled: f64,
}

impl Tolerances {
    pub const EXACT: f64 = 1e-9;
    pub const NUMERIC: f64 = 1e-3;
    pub const SAMPLED: f64 = 1e-2;
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            exact: Self::EXACT,
            numeric: Self::NUMERIC,
            sampled: Self::SAMPLED,
        }
    }
}
