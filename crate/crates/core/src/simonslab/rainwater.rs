//! Rainwater-type transfers: a convergence method holding under every functional
//! of an (I)-generating set carries over to every functional.

use std::fmt;

use crate::convexdual::{extreme_points, probe_directions, DualBody, GeneratingSet};
use crate::error::{Error, Result};
use crate::seq::{apply_functional, SequenceSpec, VectorSequence};
use crate::summability::{
    classify_fa, classify_maddox, classify_pre_cauchy, classify_statistical, classify_strong,
    ConvergenceVerdict, NumericOptions, SummabilityMatrix,
};

use super::theorems::LabOptions;

/// Sampled probe functionals added to the body's vertices.
pub const RAINWATER_PROBES: usize = 1000;

#[derive(Debug, Clone)]
pub enum RainwaterMethod {
    Strong {
        matrix: SummabilityMatrix,
        p: f64,
    },
    Maddox {
        matrix: SummabilityMatrix,
        exponents: SequenceSpec,
    },
    Statistical {
        matrix: SummabilityMatrix,
    },
    PreCauchy,
    Fa {
        matrix: SummabilityMatrix,
    },
}

impl fmt::Display for RainwaterMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RainwaterMethod::Strong { matrix, p } => write!(f, "strong({};p={p})", matrix.name()),
            RainwaterMethod::Maddox { matrix, .. } => write!(f, "maddox({})", matrix.name()),
            RainwaterMethod::Statistical { matrix } => write!(f, "statistical({})", matrix.name()),
            RainwaterMethod::PreCauchy => f.write_str("pre_cauchy"),
            RainwaterMethod::Fa { matrix } => write!(f, "fa({})", matrix.name()),
        }
    }
}

impl RainwaterMethod {
    fn classify(&self, s: &SequenceSpec, opts: &NumericOptions) -> Result<ConvergenceVerdict> {
        match self {
            RainwaterMethod::Strong { matrix, p } => classify_strong(matrix, s, *p, opts),
            RainwaterMethod::Maddox { matrix, exponents } => {
                classify_maddox(matrix, s, exponents, opts)
            }
            RainwaterMethod::Statistical { matrix } => classify_statistical(matrix, s, opts),
            RainwaterMethod::PreCauchy => classify_pre_cauchy(s, opts),
            RainwaterMethod::Fa { matrix } => classify_fa(matrix, s, opts),
        }
    }

    /// Pre-Cauchy has no target; the others must converge to `target`.
    fn target(&self, target: f64) -> f64 {
        match self {
            RainwaterMethod::PreCauchy => 0.0,
            _ => target,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ProbeOutcome {
    Holds,
    Violated,
    Inconclusive,
}

fn probe(
    method: &RainwaterMethod,
    u: &[f64],
    xs: &VectorSequence,
    x: &[f64],
    lab: &LabOptions,
    opts: &NumericOptions,
) -> Result<ProbeOutcome> {
    let s = apply_functional(u, xs)?;
    let target = method.target(u.iter().zip(x).map(|(a, b)| a * b).sum());
    let v = method.classify(&s, opts)?;
    Ok(match v.limit() {
        Some(limit) => {
            let tol = if v.is_exact() {
                lab.tolerances.exact
            } else {
                lab.tolerances.numeric
            };
            if (limit - target).abs() <= tol {
                ProbeOutcome::Holds
            } else {
                ProbeOutcome::Violated
            }
        }
        None if v.diverges() => ProbeOutcome::Violated,
        None => ProbeOutcome::Inconclusive,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RainwaterReport {
    pub method: String,
    pub probes: usize,
    pub holds: usize,
    pub violated: usize,
    pub inconclusive: usize,
    /// First probe functional violating the conclusion.
    pub witness: Option<Vec<f64>>,
    pub generates: bool,
    pub satisfied: bool,
}

/// Checks the method's convergence to `x` (or pre-Cauchy property) under every
/// functional of `B`, then under the vertices of `K` and sampled directions.
pub fn rainwater_check(
    b: &GeneratingSet,
    k: &DualBody,
    xs: &VectorSequence,
    x: &[f64],
    method: &RainwaterMethod,
    lab: &LabOptions,
) -> Result<RainwaterReport> {
    if xs.dim() != k.dim() || x.len() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: if xs.dim() != k.dim() {
                xs.dim()
            } else {
                x.len()
            },
        });
    }
    let opts = NumericOptions {
        depth: lab.depth,
        tol: lab.tolerances.numeric,
        exact_tol: lab.tolerances.exact,
        diagnostics: false,
    };
    let g = crate::convexdual::i_generates(b, k, lab.tolerances.sampled, lab.seed)?;
    if !g.generates && !lab.waive_hypothesis {
        return Err(Error::HypothesisNotVerified(
            "B does not (I)-generate K".into(),
        ));
    }
    for p in b.points_within(k)? {
        if probe(method, &p, xs, x, lab, &opts)? != ProbeOutcome::Holds {
            return Err(Error::NotApplicable(format!(
                "{method} fails under functional {p:?} of B"
            )));
        }
    }

    let mut probes = match k {
        DualBody::VPolytope(vs) => extreme_points(vs)?,
        DualBody::Ball { .. } => Vec::new(),
    };
    probes.extend(probe_directions(k.dim(), RAINWATER_PROBES, lab.seed));
    let (mut holds, mut violated, mut inconclusive) = (0, 0, 0);
    let mut witness = None;
    for u in &probes {
        match probe(method, u, xs, x, lab, &opts)? {
            ProbeOutcome::Holds => holds += 1,
            ProbeOutcome::Violated => {
                violated += 1;
                witness.get_or_insert_with(|| u.clone());
            }
            ProbeOutcome::Inconclusive => inconclusive += 1,
        }
    }
    Ok(RainwaterReport {
        method: method.to_string(),
        probes: probes.len(),
        holds,
        violated,
        inconclusive,
        witness,
        generates: g.generates,
        satisfied: violated == 0 && inconclusive == 0,
    })
}
