//! Sampled checks of the conditions a P-map must satisfy.

use crate::error::{Error, Result};
use crate::sampling::SampleRng;
use crate::seq::{Periodic, SequenceSpec};
use crate::summability::SummabilityMatrix;

use super::pmap::{pmap_term, zip_periodic, PMapKind, PMapSpec};

/// Rows checked for each sampled pair.
pub const AUDIT_ROWS: u64 = 50;
const MARGIN: f64 = 1e-9;
pub const CONTINUITY_LADDER: [f64; 6] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

/// What the lower-semicontinuity spot check does and does not cover.
pub const LSC_NOTE: &str =
    "lower semicontinuity in tau_p (pointwise convergence on bounded sets) is not certified; \
only P_n(x) <= P_n of long truncations of x is spot-checked";

#[derive(Debug, Clone, PartialEq)]
pub enum AuditOutcome {
    Passed,
    Refuted(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditCheck {
    pub name: &'static str,
    pub outcome: AuditOutcome,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub pmap: String,
    pub m: f64,
    pub checks: Vec<AuditCheck>,
    /// Topology the LSC spot check approximates.
    pub topology: &'static str,
    pub note: &'static str,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.outcome == AuditOutcome::Passed)
    }

    pub fn check(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn random_periodic(rng: &mut SampleRng) -> Periodic {
    let pre = rng.int_in(0, 3);
    let per = rng.int_in(1, 6);
    let amp = rng.uniform_in(0.1, 2.0);
    let mut draw = |len: usize| {
        (0..len)
            .map(|_| amp * rng.uniform_in(-1.0, 1.0))
            .collect::<Vec<_>>()
    };
    let preperiod = draw(pre);
    let period = draw(per);
    Periodic::new(preperiod, period).expect("nonempty finite period")
}

fn spec(p: Periodic) -> SequenceSpec {
    SequenceSpec::EventuallyPeriodic(p)
}

fn max_abs_row_sum(a: &SummabilityMatrix) -> Result<f64> {
    let mut rho: f64 = 0.0;
    for n in 1..=AUDIT_ROWS {
        rho = rho.max(a.row_apply(n, 1.0, |k| a.entry(n, k).signum())?);
    }
    Ok(rho)
}

/// Sup-norm radius `delta(eps)` guaranteeing `P_n(s) <= eps` when `|s_k| <= delta`.
fn continuity_radius(pm: &PMapSpec, eps: f64) -> Result<f64> {
    let rho = match pm.matrix() {
        Some(a) => max_abs_row_sum(a)?,
        None => 1.0,
    };
    if rho == 0.0 {
        return Ok(1.0);
    }
    Ok(match pm.kind() {
        PMapKind::Identity => eps,
        PMapKind::Zero => 1.0,
        PMapKind::StrongMatrix { p, .. } => (eps / rho).powf(1.0 / p),
        PMapKind::StrongMatrixRoot { p, .. } => eps / rho.powf(1.0 / p),
        // |s|^{p_k} <= delta^{min p_k} once delta <= 1
        PMapKind::Maddox { exponents, .. } => {
            let exps = exponents.reduce()?;
            let q = exps
                .preperiod()
                .iter()
                .chain(exps.period())
                .copied()
                .fold(f64::INFINITY, f64::min);
            (eps / rho).min(1.0).powf(1.0 / q)
        }
        PMapKind::PreCauchyMean => eps / 2.0,
        PMapKind::FaShiftSup { .. } => eps / rho,
    })
}

fn refuted_or_passed(name: &'static str, trials: usize, failure: Option<String>) -> AuditCheck {
    AuditCheck {
        name,
        outcome: failure.map_or(AuditOutcome::Passed, AuditOutcome::Refuted),
        trials,
    }
}

/// Sampled audit of `P(0) = 0`, midpoint convexity, quasi-additivity at the
/// declared `M`, continuity at 0, and a truncation spot check for lower
/// semicontinuity.
pub fn pmap_condition_audit(pm: &PMapSpec, samples: usize, seed: u64) -> Result<AuditReport> {
    if samples < 100 {
        return Err(Error::InvalidInput(format!(
            "audit needs at least 100 samples, got {samples}"
        )));
    }
    let m = pm.m();
    let mut rng = SampleRng::new(seed);
    let pairs: Vec<(Periodic, Periodic)> = (0..samples)
        .map(|_| (random_periodic(&mut rng), random_periodic(&mut rng)))
        .collect();
    let mut checks = Vec::new();

    let mut failure = None;
    for n in 1..=100 {
        let v = pmap_term(pm, &SequenceSpec::zero(), n)?;
        if v != 0.0 {
            failure = Some(format!("P_{n}(0) = {v}"));
            break;
        }
    }
    checks.push(refuted_or_passed("p_zero", 100, failure));

    let mut failure = None;
    'convex: for (x, y) in &pairs {
        let mid = spec(zip_periodic(&[x, y], |_, v| 0.5 * (v[0] + v[1])));
        let (xs, ys) = (spec(x.clone()), spec(y.clone()));
        for n in 1..=AUDIT_ROWS {
            let lhs = pmap_term(pm, &mid, n)?;
            let rhs = 0.5 * (pmap_term(pm, &xs, n)? + pmap_term(pm, &ys, n)?);
            if lhs > rhs + MARGIN {
                failure = Some(format!("n={n}: P_n((x+y)/2) = {lhs} > {rhs}"));
                break 'convex;
            }
        }
    }
    checks.push(refuted_or_passed(
        "midpoint_convexity",
        pairs.len(),
        failure,
    ));

    let mut failure = None;
    let one = Periodic::constant(1.0);
    let probes = std::iter::once((&one, &one)).chain(pairs.iter().map(|(x, y)| (x, y)));
    'additive: for (x, y) in probes {
        let sum = spec(zip_periodic(&[x, y], |_, v| v[0] + v[1]));
        let (xs, ys) = (spec(x.clone()), spec(y.clone()));
        for n in 1..=AUDIT_ROWS {
            let lhs = pmap_term(pm, &sum, n)?;
            let rhs = m * (pmap_term(pm, &xs, n)? + pmap_term(pm, &ys, n)?);
            if lhs > rhs + MARGIN {
                failure = Some(format!(
                    "n={n}: P_n(x+y) = {lhs} > M (P_n(x) + P_n(y)) = {rhs} with M={m}"
                ));
                break 'additive;
            }
        }
    }
    checks.push(refuted_or_passed(
        "quasi_additivity",
        pairs.len() + 1,
        failure,
    ));

    let mut failure = None;
    let mut trials = 0;
    'continuity: for eps in CONTINUITY_LADDER {
        let delta = continuity_radius(pm, eps)?;
        for (x, _) in pairs.iter().take(samples / CONTINUITY_LADDER.len()) {
            trials += 1;
            let scale = delta / x.bound().max(f64::MIN_POSITIVE);
            let scaled = spec(zip_periodic(&[x], |_, v| v[0] * scale));
            for n in 1..=AUDIT_ROWS {
                let v = pmap_term(pm, &scaled, n)?;
                if v > eps + 1e-12 {
                    failure = Some(format!("eps={eps}, delta={delta}, n={n}: P_n = {v}"));
                    break 'continuity;
                }
            }
        }
    }
    checks.push(refuted_or_passed("continuity_at_zero", trials, failure));

    let mut failure = None;
    let mut trials = 0;
    'lsc: for (x, _) in pairs.iter().take(samples / 4) {
        let full = spec(x.clone());
        let span = (x.preperiod_len() + x.period_len()) as u64;
        for n in [1u64, 7, AUDIT_ROWS] {
            trials += 1;
            let cut = 2 * n + 2 * span;
            let truncated =
                SequenceSpec::periodic((1..=cut).map(|k| x.value_at(k)).collect(), vec![0.0])?;
            let (v, vt) = (pmap_term(pm, &full, n)?, pmap_term(pm, &truncated, n)?);
            if v > vt + MARGIN {
                failure = Some(format!(
                    "n={n}: P_n(x) = {v} > P_n(x truncated at {cut}) = {vt}"
                ));
                break 'lsc;
            }
        }
    }
    checks.push(refuted_or_passed(
        "truncation_lsc_spot_check",
        trials,
        failure,
    ));

    Ok(AuditReport {
        pmap: pm.to_string(),
        m,
        checks,
        topology: "tau_p",
        note: LSC_NOTE,
    })
}
