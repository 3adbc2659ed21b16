use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Deserialize;
use summa_core::convexdual::{i_generates, DualBody, GeneratingSet};
use summa_core::sampling::SampleRng;
use summa_core::simonslab::{
    check_cor33, check_simons, check_theorem31, pmap_condition_audit, rainwater_check,
    random_constant_sequences, random_suite, random_vector_sequence, AuditOutcome, LabOptions,
    PMapSpec, RainwaterMethod, SuiteSpec, TheoremReport, BALL_DIRECTIONS,
};
use summa_core::summability::SummabilityMatrix;
use summa_core::{Error, Tolerances, VectorSequence, DEFAULT_DEPTH};

use crate::config::{config_error, resolve_depth, resolve_seed, resolve_tolerances};
use crate::report::{num, opt_num, text, vector, Report, Row, RowStatus};
use crate::Common;

pub const COLUMNS: &[&str] = &[
    "instance_id",
    "experiment",
    "lhs",
    "rhs",
    "M",
    "satisfied",
    "exactness_lhs",
    "exactness_rhs",
    "witness",
];

pub const DEFAULT_AUDIT_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Simons,
    Theorem31,
    Cor33,
    Rainwater,
    Audit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomKind {
    #[default]
    Constant,
    Periodic,
}

fn default_max_period() -> usize {
    8
}

/// Seeded sequences appended to the explicit ones.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSequences {
    pub count: usize,
    #[serde(default)]
    pub kind: RandomKind,
    #[serde(default = "default_max_period")]
    pub max_period: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub depth: Option<u64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub waive_hypothesis: bool,
    #[serde(default)]
    pub ball_directions: Option<usize>,
    #[serde(default)]
    pub suite: Option<SuiteSpec>,
    #[serde(default)]
    pub body: Option<DualBody>,
    #[serde(default)]
    pub generating_set: Option<GeneratingSet>,
    #[serde(default)]
    pub sequences: Vec<VectorSequence>,
    #[serde(default)]
    pub random_sequences: Option<RandomSequences>,
    #[serde(default)]
    pub pmap: Option<PMapSpec>,
    #[serde(default)]
    pub pmaps: Vec<PMapSpec>,
    #[serde(default)]
    pub matrix: Option<SummabilityMatrix>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub ps: Vec<f64>,
    #[serde(default)]
    pub method: Option<RainwaterMethod>,
    #[serde(default)]
    pub target: Option<Vec<f64>>,
    #[serde(default)]
    pub samples: Option<usize>,
}

struct Case {
    id: usize,
    body: DualBody,
    b: GeneratingSet,
    xs: VectorSequence,
}

fn cases(cfg: &VerifyConfig, seed: u64) -> anyhow::Result<Vec<Case>> {
    if let Some(spec) = &cfg.suite {
        if cfg.body.is_some() || cfg.generating_set.is_some() || !cfg.sequences.is_empty() {
            return Err(config_error(
                "`suite` cannot be combined with `body`, `generating_set` or `sequences`",
            ));
        }
        return Ok(random_suite(spec, seed)
            .map_err(|e| config_error(format!("suite: {e}")))?
            .into_iter()
            .map(|i| Case {
                id: i.id,
                body: i.body,
                b: i.generating_set,
                xs: i.xs,
            })
            .collect());
    }
    let (Some(body), Some(b)) = (&cfg.body, &cfg.generating_set) else {
        return Err(config_error(
            "either `suite` or both `body` and `generating_set` are required",
        ));
    };
    let mut seqs = cfg.sequences.clone();
    if let Some(r) = &cfg.random_sequences {
        match r.kind {
            RandomKind::Constant => {
                seqs.extend(random_constant_sequences(body.dim(), r.count, seed))
            }
            RandomKind::Periodic => {
                if r.max_period == 0 {
                    return Err(config_error("random_sequences.max_period must be >= 1"));
                }
                let mut rng = SampleRng::new(seed);
                seqs.extend(
                    (0..r.count)
                        .map(|_| random_vector_sequence(&mut rng, body.dim(), r.max_period)),
                );
            }
        }
    }
    for (i, xs) in seqs.iter().enumerate() {
        if xs.dim() != body.dim() {
            return Err(config_error(format!(
                "sequence {i} has dimension {}, body has {}",
                xs.dim(),
                body.dim()
            )));
        }
    }
    Ok(seqs
        .into_iter()
        .enumerate()
        .map(|(id, xs)| Case {
            id,
            body: body.clone(),
            b: b.clone(),
            xs,
        })
        .collect())
}

fn pmaps(cfg: &VerifyConfig) -> anyhow::Result<Vec<PMapSpec>> {
    let mut all: Vec<PMapSpec> = cfg.pmap.iter().cloned().collect();
    all.extend(cfg.pmaps.iter().cloned());
    if all.is_empty() {
        return Err(config_error("`pmap` or `pmaps` is required"));
    }
    Ok(all)
}

/// One verification to run, in output order.
enum Job {
    Simons,
    Theorem31(PMapSpec),
    Cor33(f64),
    Rainwater,
}

impl Job {
    fn label(&self, cfg: &VerifyConfig) -> String {
        match self {
            Job::Simons => "simons".into(),
            Job::Theorem31(pm) => format!("theorem31:{pm}"),
            Job::Cor33(p) => format!("cor33:p={p}"),
            Job::Rainwater => match &cfg.method {
                Some(m) => format!("rainwater:{m}"),
                None => "rainwater".into(),
            },
        }
    }
}

struct Outcome {
    row: Row,
    ratio: Option<f64>,
    generates: Option<bool>,
}

fn theorem_row(id: usize, label: String, r: &TheoremReport, unmet_if_failed: bool) -> Outcome {
    let status = match (r.satisfied, unmet_if_failed && !r.generation.generates) {
        (true, _) => RowStatus::Satisfied,
        (false, true) => RowStatus::HypothesisUnmet,
        (false, false) => RowStatus::Violated,
    };
    Outcome {
        row: Row {
            cells: vec![
                id.to_string(),
                label,
                num(r.lhs.value),
                num(r.rhs.value),
                num(r.m),
                r.satisfied.to_string(),
                r.lhs.accuracy.label().into(),
                r.rhs.accuracy.label().into(),
                r.witness.as_deref().map(vector).unwrap_or_default(),
            ],
            status,
        },
        ratio: r.ratio(),
        generates: Some(r.generation.generates),
    }
}

fn unmet_row(id: usize, label: String, m: Option<f64>, witness: String) -> Outcome {
    Outcome {
        row: Row {
            cells: vec![
                id.to_string(),
                label,
                String::new(),
                String::new(),
                opt_num(m),
                "hypothesis_unmet".into(),
                String::new(),
                String::new(),
                witness,
            ],
            status: RowStatus::HypothesisUnmet,
        },
        ratio: None,
        generates: Some(false),
    }
}

fn run_job(
    case: &Case,
    job: &Job,
    cfg: &VerifyConfig,
    lab: &LabOptions,
) -> anyhow::Result<Outcome> {
    let label = job.label(cfg);
    let (k, b, xs) = (&case.body, &case.b, &case.xs);
    let generation_witness = || -> String {
        i_generates(b, k, lab.tolerances.sampled, lab.seed)
            .ok()
            .and_then(|g| g.witness)
            .map(|w| vector(&w))
            .unwrap_or_default()
    };
    let result = match job {
        Job::Simons => {
            check_simons(k, b, xs, lab).map(|r| theorem_row(case.id, label.clone(), &r, true))
        }
        Job::Theorem31(pm) => check_theorem31(pm, k, b, xs, lab)
            .map(|r| theorem_row(case.id, label.clone(), &r, false)),
        Job::Cor33(p) => {
            let a = cfg.matrix.clone().unwrap_or_else(SummabilityMatrix::cesaro);
            check_cor33(k, b, &a, *p, xs, lab)
                .map(|r| theorem_row(case.id, label.clone(), &r, false))
        }
        Job::Rainwater => {
            let method = cfg.method.as_ref().expect("validated");
            let target = cfg.target.as_ref().expect("validated");
            rainwater_check(b, k, xs, target, method, lab).map(|r| {
                let certainty = match k {
                    DualBody::VPolytope(_) => "exact",
                    DualBody::Ball { .. } => "approximate",
                };
                Outcome {
                    row: Row {
                        cells: vec![
                            case.id.to_string(),
                            label.clone(),
                            r.holds.to_string(),
                            r.probes.to_string(),
                            String::new(),
                            r.satisfied.to_string(),
                            certainty.into(),
                            certainty.into(),
                            r.witness.as_deref().map(vector).unwrap_or_default(),
                        ],
                        status: if r.satisfied {
                            RowStatus::Satisfied
                        } else {
                            RowStatus::Violated
                        },
                    },
                    ratio: None,
                    generates: Some(r.generates),
                }
            })
        }
    };
    match result {
        Ok(o) => Ok(o),
        Err(Error::HypothesisNotVerified(_)) => {
            let m = match job {
                Job::Theorem31(pm) => Some(pm.m()),
                Job::Cor33(_) => Some(1.0),
                _ => None,
            };
            Ok(unmet_row(case.id, label, m, generation_witness()))
        }
        Err(Error::NotApplicable(msg)) => Ok(unmet_row(case.id, label, None, text(&msg))),
        Err(e) => Err(config_error(format!("instance {}, {label}: {e}", case.id))),
    }
}

fn audit(cfg: &VerifyConfig, seed: u64) -> anyhow::Result<Report> {
    let samples = cfg.samples.unwrap_or(DEFAULT_AUDIT_SAMPLES);
    let pms = pmaps(cfg)?;
    let reports: Vec<_> = pms
        .par_iter()
        .map(|pm| pmap_condition_audit(pm, samples, seed))
        .collect();
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for (i, (pm, r)) in pms.iter().zip(reports).enumerate() {
        let r = r.map_err(|e| config_error(format!("pmap `{pm}`: {e}")))?;
        summary.push(format!(
            "{}: {} (M = {}, topology {})",
            r.pmap,
            if r.passed() { "passed" } else { "REFUTED" },
            num(r.m),
            r.topology
        ));
        for c in &r.checks {
            let (ok, witness) = match &c.outcome {
                AuditOutcome::Passed => (true, String::new()),
                AuditOutcome::Refuted(msg) => (false, text(msg)),
            };
            rows.push(Row {
                cells: vec![
                    i.to_string(),
                    format!("audit:{}:{}", r.pmap, c.name),
                    c.trials.to_string(),
                    String::new(),
                    num(r.m),
                    ok.to_string(),
                    "sampled".into(),
                    String::new(),
                    witness,
                ],
                status: if ok {
                    RowStatus::Satisfied
                } else {
                    RowStatus::Violated
                },
            });
        }
    }
    summary.push(summa_core::simonslab::LSC_NOTE.to_string());
    Ok(Report {
        columns: COLUMNS,
        rows,
        summary,
    })
}

pub fn run(cfg: &VerifyConfig, common: &Common) -> anyhow::Result<Report> {
    let seed = resolve_seed(common.seed, cfg.seed)?;
    if cfg.experiment == ExperimentKind::Audit {
        return audit(cfg, seed);
    }
    let lab = LabOptions {
        depth: resolve_depth(common.depth, cfg.depth, DEFAULT_DEPTH)?,
        tolerances: resolve_tolerances(common, cfg.tolerances)?,
        seed,
        ball_directions: cfg.ball_directions.unwrap_or(BALL_DIRECTIONS),
        waive_hypothesis: cfg.waive_hypothesis,
    };
    let jobs: Vec<Job> = match cfg.experiment {
        ExperimentKind::Simons => vec![Job::Simons],
        ExperimentKind::Theorem31 => pmaps(cfg)?.into_iter().map(Job::Theorem31).collect(),
        ExperimentKind::Cor33 => {
            let ps: Vec<f64> = cfg.p.iter().chain(&cfg.ps).copied().collect();
            if ps.is_empty() {
                return Err(config_error("`p` or `ps` is required for cor33"));
            }
            ps.into_iter().map(Job::Cor33).collect()
        }
        ExperimentKind::Rainwater => {
            if cfg.method.is_none() || cfg.target.is_none() {
                return Err(config_error("rainwater requires `method` and `target`"));
            }
            vec![Job::Rainwater]
        }
        ExperimentKind::Audit => unreachable!(),
    };
    let cases = cases(cfg, seed)?;
    let work: Vec<(&Case, &Job)> = cases
        .iter()
        .flat_map(|c| jobs.iter().map(move |j| (c, j)))
        .collect();
    let outcomes: Vec<anyhow::Result<Outcome>> = work
        .par_iter()
        .map(|(c, j)| run_job(c, j, cfg, &lab))
        .collect();
    let outcomes: Vec<Outcome> = outcomes.into_iter().collect::<anyhow::Result<_>>()?;

    let mut max_ratio: BTreeMap<String, f64> = BTreeMap::new();
    for ((_, j), o) in work.iter().zip(&outcomes) {
        if let (Job::Theorem31(_), Some(r)) = (j, o.ratio) {
            let e = max_ratio.entry(j.label(cfg)).or_insert(f64::NEG_INFINITY);
            *e = e.max(r);
        }
    }
    let generating = outcomes
        .iter()
        .filter(|o| o.generates == Some(true))
        .count();
    let rows: Vec<Row> = outcomes.into_iter().map(|o| o.row).collect();
    let count = |s| rows.iter().filter(|r| r.status == s).count();
    let mut summary = vec![
        format!(
            "{} rows over {} instances: {} satisfied, {} violated, {} hypothesis unmet",
            rows.len(),
            cases.len(),
            count(RowStatus::Satisfied),
            count(RowStatus::Violated),
            count(RowStatus::HypothesisUnmet)
        ),
        format!("B (I)-generates K on {generating} of {} rows", rows.len()),
    ];
    for (label, r) in max_ratio {
        summary.push(format!("{label}: max lhs/(M rhs) = {}", num(r)));
    }
    Ok(Report {
        columns: COLUMNS,
        rows,
        summary,
    })
}
