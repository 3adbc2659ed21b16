use rayon::prelude::*;
use serde::Deserialize;
use summa_core::summability::{toeplitz_evidence, ConditionStatus, SummabilityMatrix};

use crate::config::{config_error, resolve_depth};
use crate::report::{num, text, Report, Row, RowStatus};
use crate::Common;

pub const COLUMNS: &[&str] = &[
    "matrix",
    "depth",
    "declared_regular",
    "bounded_rows",
    "row_sums",
    "columns",
    "status",
    "witness",
];

pub const DEFAULT_DEPTH: u64 = 10_000;
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularityConfig {
    #[serde(default)]
    pub depth: Option<u64>,
    #[serde(default)]
    pub tol: Option<f64>,
    pub matrices: Vec<SummabilityMatrix>,
}

fn cell(s: ConditionStatus) -> &'static str {
    match s {
        ConditionStatus::Consistent => "consistent",
        ConditionStatus::Refuted(_) => "refuted",
    }
}

pub fn run(cfg: &RegularityConfig, common: &Common) -> anyhow::Result<Report> {
    let depth = resolve_depth(common.depth, cfg.depth, DEFAULT_DEPTH)?;
    let tol = cfg.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(config_error(format!("tol must be positive, got {tol}")));
    }
    let reports: Vec<_> = cfg
        .matrices
        .par_iter()
        .map(|a| toeplitz_evidence(a, depth, tol))
        .collect();
    let mut rows = Vec::new();
    for (a, r) in cfg.matrices.iter().zip(reports) {
        let r = r.map_err(|e| config_error(format!("matrix `{}`: {e}", a.name())))?;
        let witness: Vec<String> = r
            .conditions()
            .iter()
            .filter_map(|(name, s)| match s {
                ConditionStatus::Refuted(w) => Some(format!("{name}: {w}")),
                ConditionStatus::Consistent => None,
            })
            .collect();
        let (label, status) = match (r.any_refuted(), a.declared_regular()) {
            (false, _) => ("consistent", RowStatus::Satisfied),
            (true, true) => ("REFUTED", RowStatus::Violated),
            (true, false) => ("not_regular", RowStatus::Satisfied),
        };
        rows.push(Row {
            cells: vec![
                a.name().to_string(),
                depth.to_string(),
                a.declared_regular().to_string(),
                cell(r.bounded_rows).into(),
                cell(r.row_sums).into(),
                cell(r.columns).into(),
                label.into(),
                text(&witness.join("; ")),
            ],
            status,
        });
    }
    let refuted = rows
        .iter()
        .filter(|r| r.status == RowStatus::Violated)
        .count();
    let summary = vec![format!(
        "{} matrices at depth {depth} (tol {}), {refuted} declared-regular refuted",
        rows.len(),
        num(tol)
    )];
    Ok(Report {
        columns: COLUMNS,
        rows,
        summary,
    })
}
