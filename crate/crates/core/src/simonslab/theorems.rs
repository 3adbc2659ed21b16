use crate::convexdual::{
    extreme_points, i_generates, probe_directions, DualBody, GeneratingSet, GenerationVerdict,
};
use crate::error::{Error, Result};
use crate::seq::{apply_functional, Periodic, SequenceSpec, VectorSequence};
use crate::summability::SummabilityMatrix;
use crate::tolerance::{Tolerances, DEFAULT_DEPTH};

use super::pmap::{numeric_rows, pmap_limsup, Accuracy, LimsupValue, PMapSpec};

/// Directions sampled when a supremum ranges over a ball.
pub const BALL_DIRECTIONS: usize = 2000;

#[derive(Debug, Clone, PartialEq)]
pub struct LabOptions {
    pub depth: u64,
    pub tolerances: Tolerances,
    /// Seeds ball directions and probe functionals.
    pub seed: u64,
    pub ball_directions: usize,
    /// Run the conclusion even when `B` fails the (I)-generation check.
    pub waive_hypothesis: bool,
}

impl Default for LabOptions {
    fn default() -> Self {
        Self {
            depth: DEFAULT_DEPTH,
            tolerances: Tolerances::default(),
            seed: 0,
            ball_directions: BALL_DIRECTIONS,
            waive_hypothesis: false,
        }
    }
}

impl LabOptions {
    pub fn tol_for(&self, accuracy: Accuracy) -> f64 {
        match accuracy {
            Accuracy::Exact => self.tolerances.exact,
            Accuracy::Numeric => self.tolerances.numeric,
            Accuracy::Approximate => self.tolerances.sampled,
        }
    }
}

/// A supremum over a body or a set, with the point attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct SupValue {
    pub value: f64,
    pub accuracy: Accuracy,
    pub argmax: Vec<f64>,
}

/// What is maximized over functionals.
#[derive(Clone, Copy)]
enum Objective<'a> {
    /// `limsup_n x*(x_n)`, the quantity in Simons' equality.
    Signed,
    PMap(&'a PMapSpec),
}

fn signed_limsup(s: &SequenceSpec, depth: u64) -> Result<LimsupValue> {
    if s.is_exact() {
        return Ok(LimsupValue {
            value: s.limsup_exact()?,
            accuracy: Accuracy::Exact,
        });
    }
    let rows = numeric_rows(depth);
    let value = (rows[0]..=depth)
        .map(|n| s.value_at(n))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(LimsupValue {
        value,
        accuracy: Accuracy::Numeric,
    })
}

fn evaluate(
    obj: Objective,
    x_star: &[f64],
    xs: &VectorSequence,
    depth: u64,
) -> Result<LimsupValue> {
    let s = apply_functional(x_star, xs)?;
    match obj {
        Objective::Signed => signed_limsup(&s, depth),
        Objective::PMap(pm) => pmap_limsup(pm, &s, depth),
    }
}

/// One period of the common tail of periodic coordinates, as vectors.
fn tail_block(xs: &VectorSequence) -> Option<Vec<Vec<f64>>> {
    let ps: Vec<&Periodic> = xs
        .coords()
        .iter()
        .map(SequenceSpec::as_periodic)
        .collect::<Option<_>>()?;
    let pre = ps.iter().map(|p| p.preperiod_len() as u64).max()?;
    let period = ps
        .iter()
        .fold(1u64, |l, p| num_integer::lcm(l, p.period_len() as u64));
    Some(
        (pre + 1..=pre + period)
            .map(|k| ps.iter().map(|p| p.value_at(k)).collect())
            .collect(),
    )
}

fn max_over(
    obj: Objective,
    points: &[Vec<f64>],
    xs: &VectorSequence,
    opts: &LabOptions,
    floor: Accuracy,
) -> Result<SupValue> {
    let block = match obj {
        Objective::Signed => tail_block(xs),
        Objective::PMap(_) => None,
    };
    let mut best: Option<SupValue> = None;
    let mut accuracy = floor;
    for p in points {
        let v = match &block {
            // limsup of x*(x_n) over a periodic tail is the max over one period
            Some(rows) => LimsupValue {
                value: rows
                    .iter()
                    .map(|x| p.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
                    .fold(f64::NEG_INFINITY, f64::max),
                accuracy: Accuracy::Exact,
            },
            None => evaluate(obj, p, xs, opts.depth)?,
        };
        accuracy = accuracy.max(v.accuracy);
        if best.as_ref().is_none_or(|b| v.value > b.value) {
            best = Some(SupValue {
                value: v.value,
                accuracy,
                argmax: p.clone(),
            });
        }
    }
    let mut best = best.ok_or_else(|| Error::InvalidInput("supremum over an empty set".into()))?;
    best.accuracy = accuracy;
    Ok(best)
}

fn check_dims(k: &DualBody, xs: &VectorSequence) -> Result<()> {
    if k.dim() != xs.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: xs.dim(),
        });
    }
    Ok(())
}

fn sup_body(
    obj: Objective,
    k: &DualBody,
    xs: &VectorSequence,
    opts: &LabOptions,
) -> Result<SupValue> {
    check_dims(k, xs)?;
    match k {
        // the objective is convex in x*, so its sup over a polytope sits at a vertex
        DualBody::VPolytope(vs) => max_over(obj, &extreme_points(vs)?, xs, opts, Accuracy::Exact),
        DualBody::Ball { radius, dim } => {
            let points: Vec<Vec<f64>> = probe_directions(*dim, opts.ball_directions, opts.seed)
                .into_iter()
                .map(|u| u.into_iter().map(|x| x * radius).collect())
                .collect();
            max_over(obj, &points, xs, opts, Accuracy::Approximate)
        }
    }
}

fn sup_set(
    obj: Objective,
    b: &GeneratingSet,
    k: &DualBody,
    xs: &VectorSequence,
    opts: &LabOptions,
) -> Result<SupValue> {
    check_dims(k, xs)?;
    max_over(obj, &b.points_within(k)?, xs, opts, Accuracy::Exact)
}

/// `sup_{x* in K} limsup_n P_n(x*(x_n))`.
pub fn sup_limsup_body(
    pm: &PMapSpec,
    k: &DualBody,
    xs: &VectorSequence,
    opts: &LabOptions,
) -> Result<SupValue> {
    sup_body(Objective::PMap(pm), k, xs, opts)
}

/// `sup_{x* in B} limsup_n P_n(x*(x_n))`.
pub fn sup_limsup_set(
    pm: &PMapSpec,
    b: &GeneratingSet,
    k: &DualBody,
    xs: &VectorSequence,
    opts: &LabOptions,
) -> Result<SupValue> {
    sup_set(Objective::PMap(pm), b, k, xs, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Simons,
    Theorem31,
    Cor33,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Simons => "simons",
            Experiment::Theorem31 => "theorem31",
            Experiment::Cor33 => "cor33",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub experiment: Experiment,
    /// Supremum over `K`.
    pub lhs: SupValue,
    /// Supremum over `B`.
    pub rhs: SupValue,
    pub m: f64,
    pub tol: f64,
    pub satisfied: bool,
    /// Outcome of the (I)-generation check on `B`.
    pub generation: GenerationVerdict,
    /// A functional of `K` whose value `B` does not match, when unsatisfied.
    pub witness: Option<Vec<f64>>,
}

impl TheoremReport {
    fn build(
        experiment: Experiment,
        lhs: SupValue,
        rhs: SupValue,
        m: f64,
        generation: GenerationVerdict,
        opts: &LabOptions,
    ) -> Self {
        let tol = opts.tol_for(lhs.accuracy.max(rhs.accuracy));
        let satisfied = match experiment {
            Experiment::Theorem31 => lhs.value <= m * rhs.value + tol,
            Experiment::Simons | Experiment::Cor33 => (lhs.value - rhs.value).abs() <= tol,
        };
        let witness = (!satisfied).then(|| lhs.argmax.clone());
        Self {
            experiment,
            lhs,
            rhs,
            m,
            tol,
            satisfied,
            generation,
            witness,
        }
    }

    /// `lhs / (M rhs)`, the observed tightness; `None` when the right side vanishes.
    pub fn ratio(&self) -> Option<f64> {
        let denom = self.m * self.rhs.value;
        (denom.abs() > 1e-12).then(|| self.lhs.value / denom)
    }
}

fn generation(b: &GeneratingSet, k: &DualBody, opts: &LabOptions) -> Result<GenerationVerdict> {
    i_generates(b, k, opts.tolerances.sampled, opts.seed)
}

fn require_generation(
    b: &GeneratingSet,
    k: &DualBody,
    opts: &LabOptions,
) -> Result<GenerationVerdict> {
    let g = generation(b, k, opts)?;
    if !g.generates && !opts.waive_hypothesis {
        let detail = match &g.witness {
            Some(w) => format!(
                "B does not (I)-generate K ({}); witness {w:?}",
                g.certainty.label()
            ),
            None => "B does not (I)-generate K".to_string(),
        };
        return Err(Error::HypothesisNotVerified(detail));
    }
    Ok(g)
}

/// Simons' equality `sup_K limsup x*(x_n) = sup_B limsup x*(x_n)`.
///
/// Runs regardless of the (I)-generation outcome, which is recorded in the report.
pub fn check_simons(
    k: &DualBody,
    b: &GeneratingSet,
    xs: &VectorSequence,
    opts: &LabOptions,
) -> Result<TheoremReport> {
    let g = generation(b, k, opts)?;
    let lhs = sup_body(Objective::Signed, k, xs, opts)?;
    let rhs = sup_set(Objective::Signed, b, k, xs, opts)?;
    Ok(TheoremReport::build(
        Experiment::Simons,
        lhs,
        rhs,
        1.0,
        g,
        opts,
    ))
}

/// `sup_K limsup P_n(x*(x)) <= M sup_B limsup P_n(x*(x))`, after checking that `B` (I)-generates `K`.
pub fn check_theorem31(
    pm: &PMapSpec,
    k: &DualBody,
    b: &GeneratingSet,
    xs: &VectorSequence,
    opts: &LabOptions,
) -> Result<TheoremReport> {
    let g = require_generation(b, k, opts)?;
    let lhs = sup_limsup_body(pm, k, xs, opts)?;
    let rhs = sup_limsup_set(pm, b, k, xs, opts)?;
    Ok(TheoremReport::build(
        Experiment::Theorem31,
        lhs,
        rhs,
        pm.m(),
        g,
        opts,
    ))
}

/// Equality of `sup limsup sum_k a_nk |x*(x_k)|^p` over `K` and over `B`.
pub fn check_cor33(
    k: &DualBody,
    b: &GeneratingSet,
    a: &SummabilityMatrix,
    p: f64,
    xs: &VectorSequence,
    opts: &LabOptions,
) -> Result<TheoremReport> {
    if !a.declared_regular() {
        return Err(Error::InvalidInput(format!(
            "matrix `{}` is not declared regular",
            a.name()
        )));
    }
    let pm = PMapSpec::strong(a.clone(), p)?;
    let g = require_generation(b, k, opts)?;
    let lhs = sup_limsup_body(&pm, k, xs, opts)?;
    let rhs = sup_limsup_set(&pm, b, k, xs, opts)?;
    Ok(TheoremReport::build(
        Experiment::Cor33,
        lhs,
        rhs,
        1.0,
        g,
        opts,
    ))
}
