use rayon::prelude::*;
use serde::Deserialize;
use summa_core::summability::{
    classify_almost, classify_fa, classify_maddox, classify_matrix, classify_ordinary,
    classify_pre_cauchy, classify_pre_cauchy_count, classify_statistical, classify_strong,
    ConvergenceVerdict, Exactness, NumericOptions, SummabilityMatrix, VerdictStatus,
};
use summa_core::{SequenceSpec, Tolerances, DEFAULT_DEPTH};

use crate::config::{check_id, config_error, resolve_depth, resolve_tolerances};
use crate::report::{num, opt_num, Report, Row, RowStatus};
use crate::Common;

pub const COLUMNS: &[&str] = &[
    "sequence_id",
    "method",
    "status",
    "limit",
    "exactness",
    "depth",
    "last_term",
];

fn cesaro() -> SummabilityMatrix {
    SummabilityMatrix::cesaro()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MethodSpec {
    Ordinary,
    Matrix {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
    },
    Statistical {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
    },
    Strong {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
        p: f64,
    },
    Maddox {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
        exponents: SequenceSpec,
    },
    PreCauchy,
    PreCauchyCount {
        eps: f64,
    },
    Almost,
    Fa {
        #[serde(default = "cesaro")]
        matrix: SummabilityMatrix,
    },
}

impl MethodSpec {
    pub fn label(&self) -> String {
        match self {
            MethodSpec::Ordinary => "ordinary".into(),
            MethodSpec::Matrix { matrix } => format!("matrix({})", matrix.name()),
            MethodSpec::Statistical { matrix } => format!("statistical({})", matrix.name()),
            MethodSpec::Strong { matrix, p } => format!("strong({};p={p})", matrix.name()),
            MethodSpec::Maddox { matrix, .. } => format!("maddox({})", matrix.name()),
            MethodSpec::PreCauchy => "pre_cauchy".into(),
            MethodSpec::PreCauchyCount { eps } => format!("pre_cauchy_count(eps={eps})"),
            MethodSpec::Almost => "almost".into(),
            MethodSpec::Fa { matrix } => format!("fa({})", matrix.name()),
        }
    }

    fn run(
        &self,
        s: &SequenceSpec,
        opts: &NumericOptions,
    ) -> summa_core::Result<ConvergenceVerdict> {
        match self {
            MethodSpec::Ordinary => classify_ordinary(s, opts),
            MethodSpec::Matrix { matrix } => classify_matrix(matrix, s, opts),
            MethodSpec::Statistical { matrix } => classify_statistical(matrix, s, opts),
            MethodSpec::Strong { matrix, p } => classify_strong(matrix, s, *p, opts),
            MethodSpec::Maddox { matrix, exponents } => classify_maddox(matrix, s, exponents, opts),
            MethodSpec::PreCauchy => classify_pre_cauchy(s, opts),
            MethodSpec::PreCauchyCount { eps } => classify_pre_cauchy_count(s, *eps, opts),
            MethodSpec::Almost => classify_almost(s, opts),
            MethodSpec::Fa { matrix } => classify_fa(matrix, s, opts),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedStatus {
    Converges,
    Diverges,
}

/// A declared verdict; a mismatch fails the run.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub method: String,
    pub status: ExpectedStatus,
    #[serde(default)]
    pub limit: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedSequence {
    pub id: String,
    pub spec: SequenceSpec,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyConfig {
    #[serde(default)]
    pub depth: Option<u64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub sequences: Vec<NamedSequence>,
    pub methods: Vec<MethodSpec>,
}

fn exactness(v: &ConvergenceVerdict) -> String {
    match v.exactness() {
        Some(Exactness::Exact(j)) => format!("exact({})", j.tag()),
        Some(e) => e.label().to_string(),
        None => String::new(),
    }
}

fn meets(v: &ConvergenceVerdict, e: &Expectation, tol: f64) -> bool {
    match (e.status, &v.status) {
        (ExpectedStatus::Converges, VerdictStatus::ConvergesTo { limit, .. }) => {
            e.limit.map_or(true, |l| (l - limit).abs() <= tol)
        }
        (ExpectedStatus::Diverges, VerdictStatus::Diverges { .. }) => true,
        _ => false,
    }
}

pub fn run(cfg: &ClassifyConfig, common: &Common) -> anyhow::Result<Report> {
    let tolerances = resolve_tolerances(common, cfg.tolerances)?;
    let depth = resolve_depth(common.depth, cfg.depth, DEFAULT_DEPTH)?;
    let opts = NumericOptions {
        depth,
        tol: tolerances.numeric,
        exact_tol: tolerances.exact,
        diagnostics: true,
    };
    let labels: Vec<String> = cfg.methods.iter().map(MethodSpec::label).collect();
    for s in &cfg.sequences {
        check_id(&s.id)?;
        for e in &s.expect {
            if !labels.contains(&e.method) {
                return Err(config_error(format!(
                    "sequence `{}` expects a verdict for `{}`, which is not in `methods`",
                    s.id, e.method
                )));
            }
        }
    }

    let jobs: Vec<(&NamedSequence, &MethodSpec, &String)> = cfg
        .sequences
        .iter()
        .flat_map(|s| cfg.methods.iter().zip(&labels).map(move |(m, l)| (s, m, l)))
        .collect();
    let verdicts: Vec<summa_core::Result<ConvergenceVerdict>> = jobs
        .par_iter()
        .map(|(s, m, _)| m.run(&s.spec, &opts))
        .collect();

    let mut rows = Vec::with_capacity(jobs.len());
    let mut summary = Vec::new();
    for ((s, _, label), v) in jobs.iter().zip(verdicts) {
        let v = v.map_err(|e| config_error(format!("sequence `{}`, {label}: {e}", s.id)))?;
        let mut status = RowStatus::Satisfied;
        for e in s.expect.iter().filter(|e| &e.method == *label) {
            let tol = if v.is_exact() {
                tolerances.exact
            } else {
                tolerances.numeric
            };
            if !meets(&v, e, tol) {
                status = RowStatus::Violated;
                summary.push(format!(
                    "REFUTED: `{}` under {label} expected {:?}{}, got {:?}",
                    s.id,
                    e.status,
                    e.limit.map(|l| format!(" {l}")).unwrap_or_default(),
                    v.status
                ));
            }
        }
        rows.push(Row {
            cells: vec![
                s.id.clone(),
                label.to_string(),
                v.status_label().to_string(),
                opt_num(v.limit()),
                exactness(&v),
                depth.to_string(),
                opt_num(v.last_term()),
            ],
            status,
        });
    }
    let refuted = rows
        .iter()
        .filter(|r| r.status == RowStatus::Violated)
        .count();
    summary.insert(
        0,
        format!(
            "{} verdicts, {} sequences x {} methods, depth {}, {} expectation failures",
            rows.len(),
            cfg.sequences.len(),
            cfg.methods.len(),
            num(depth as f64),
            refuted
        ),
    );
    Ok(Report {
        columns: COLUMNS,
        rows,
        summary,
    })
}
