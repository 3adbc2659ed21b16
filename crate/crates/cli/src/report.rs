use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Markdown,
}

/// How a row counts toward the exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Satisfied,
    Violated,
    HypothesisUnmet,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub cells: Vec<String>,
    pub status: RowStatus,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub columns: &'static [&'static str],
    pub rows: Vec<Row>,
    pub summary: Vec<String>,
}

impl Report {
    pub fn count(&self, status: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn exit_code(&self) -> u8 {
        if self.count(RowStatus::Violated) > 0 {
            1
        } else if self.count(RowStatus::HypothesisUnmet) > 0 {
            3
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Markdown => self.markdown(),
        }
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.cells.join(","));
            out.push('\n');
        }
        out
    }

    fn markdown(&self) -> String {
        let mut out = format!("| {} |\n", self.columns.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(self.columns.len()));
        for row in &self.rows {
            let _ = writeln!(out, "| {} |", row.cells.join(" | "));
        }
        if !self.summary.is_empty() {
            out.push('\n');
            for line in &self.summary {
                let _ = writeln!(out, "- {line}");
            }
        }
        out
    }
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn vector(v: &[f64]) -> String {
    v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(";")
}

/// Free text in a cell: no separators, no newlines.
pub fn text(s: &str) -> String {
    s.replace([',', '|'], ";").replace(['\n', '\r'], " ")
}
