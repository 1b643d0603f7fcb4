//! The subcommands as pure functions from input to exit code and output.

use std::fmt::Write;

use tricover::cover::{classify_cover_with, CaseLabel, CoverError};
use tricover::coverfile::parse_cover_file;
use tricover::f3::{h0, section_basis, Chart, DivisorClass};
use tricover::ideal::{SolverConfig, DEFAULT_SPAIR_BUDGET};

use crate::report::{render_table, Provenance, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, message: String) -> Self {
        Outcome { code, stdout: String::new(), stderr: message + "\n" }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub json: bool,
    pub expect: Option<CaseLabel>,
    pub chart: Option<Chart>,
    pub spair_budget: Option<usize>,
}

fn cover_error_outcome(source: &str, e: &CoverError) -> Outcome {
    let code = if e.is_resource() { EXIT_RESOURCE } else { EXIT_MISMATCH };
    Outcome::fail(code, format!("error: {}: {}", source, e))
}

/// Classifies the cover described by `input`. Flags override the file's
/// own `chart` (the coordinates its sections are written in) and
/// `spair_budget`.
pub fn verify(source: &str, input: &str, opts: &VerifyOptions) -> Outcome {
    let file = match parse_cover_file(input) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("error: {}: {}", source, e)),
    };
    let budget = opts.spair_budget.or(file.spair_budget).unwrap_or(DEFAULT_SPAIR_BUDGET);
    let chart = opts.chart.or(file.chart).unwrap_or(Chart::V0);
    if chart.is_sigma_chart() {
        return Outcome::fail(EXIT_INPUT, format!("error: {}: chart must be V0 or V1", source));
    }
    let spec = match file.to_spec_on(chart) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("error: {}: {}", source, e)),
    };
    let config = SolverConfig { spair_budget: budget };
    let classification = match classify_cover_with(&spec, &config) {
        Ok(r) => r,
        Err(e) => return cover_error_outcome(source, &e),
    };
    let report = Report::new(Provenance::new(input.as_bytes(), budget, chart), classification);
    let label = report.classification.case_label;
    let mut out = Outcome {
        code: EXIT_OK,
        stdout: if opts.json { report.to_json() } else { render_table(&report) },
        stderr: String::new(),
    };
    if label == CaseLabel::Unclassified {
        out.code = EXIT_MISMATCH;
        let _ = writeln!(out.stderr, "{}: not classified", source);
    } else if let Some(want) = opts.expect {
        if want != label {
            out.code = EXIT_MISMATCH;
            let _ = writeln!(out.stderr, "{}: expected {}, classified as {}", source, want, label);
        }
    }
    out
}

pub fn h0_text(a: i64, b: i64) -> String {
    format!("{}\n", h0(DivisorClass::new(a, b)))
}

pub fn basis_text(a: i64, b: i64) -> String {
    let mut out = String::new();
    for (k, j) in section_basis(DivisorClass::new(a, b)) {
        let mut parts = Vec::new();
        for (v, e) in [("t", k), ("u", j)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{}^{}", v, e)),
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        out.push_str(&parts.join("*"));
        out.push('\n');
    }
    out
}
