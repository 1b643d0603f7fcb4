//! The JSON report: a classification plus the provenance it was computed
//! under.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use tricover::cover::ClassificationReport;
use tricover::f3::Chart;
use tricover::poly::MultiPoly;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// SHA-256 of the cover file bytes.
    pub input_sha256: String,
    pub tool_version: String,
    pub spair_budget: usize,
    pub chart: Chart,
}

impl Provenance {
    pub fn new(input: &[u8], spair_budget: usize, chart: Chart) -> Self {
        Provenance {
            input_sha256: crate::datasets::sha256_hex(input),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            spair_budget,
            chart,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub provenance: Provenance,
    #[serde(flatten)]
    pub classification: ClassificationReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportError {
    Json(String),
    Schema(u32),
    Invariants(String),
    Certificate { name: String, message: String },
}

impl std::fmt::Display for ReportError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReportError::Json(m) => write!(f, "malformed report: {}", m),
            ReportError::Schema(s) => write!(f, "unsupported schema {} (expected {})", s, SCHEMA),
            ReportError::Invariants(m) => write!(f, "inconsistent invariants: {}", m),
            ReportError::Certificate { name, message } => write!(f, "certificate `{}`: {}", name, message),
        }
    }
}

impl std::error::Error for ReportError {}

impl Report {
    pub fn new(provenance: Provenance, classification: ClassificationReport) -> Self {
        Report { schema: SCHEMA, provenance, classification }
    }

    /// Pretty JSON with a trailing newline; field order is fixed by the
    /// types and maps are sorted, so equal reports give equal bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Decodes and checks a report: schema version, label/invariant
    /// agreement, and that every certificate polynomial is canonical text.
    pub fn from_json(text: &str) -> Result<Report, ReportError> {
        let r: Report = serde_json::from_str(text).map_err(|e| ReportError::Json(e.to_string()))?;
        if r.schema != SCHEMA {
            return Err(ReportError::Schema(r.schema));
        }
        let c = &r.classification;
        let expected = c.case_label.invariants();
        let found = match (c.k2, c.pg) {
            (Some(k), Some(p)) => Some((k, p)),
            (None, None) => None,
            _ => return Err(ReportError::Invariants("K2 and pg must both be present or both null".into())),
        };
        if expected != found {
            return Err(ReportError::Invariants(format!("{} requires {:?}, report has {:?}", c.case_label, expected, found)));
        }
        for cert in &c.certificates {
            let vars: Vec<&str> = cert.vars.iter().map(|s| s.as_str()).collect();
            for p in &cert.polys {
                let err = |message: String| ReportError::Certificate { name: cert.name.clone(), message };
                let parsed = MultiPoly::parse(p, &vars).map_err(|e| err(e.to_string()))?;
                if parsed.to_string() != *p {
                    return Err(err(format!("`{}` is not in canonical form", p)));
                }
            }
        }
        Ok(r)
    }
}

/// Human-readable summary.
pub fn render_table(r: &Report) -> String {
    let c = &r.classification;
    let mut out = String::new();
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |v| v.to_string());
    let rows = [
        ("case", c.case_label.to_string()),
        ("K2", opt(c.k2)),
        ("pg", opt(c.pg)),
        ("preset", c.preset.to_string()),
        ("form", c.form.clone()),
        ("galois", c.galois.to_string()),
        ("smooth over infinity", c.smooth_over_infinity.to_string()),
        ("singular points", c.singular_points.len().to_string()),
    ];
    for (k, v) in rows {
        let _ = writeln!(out, "{:<22}{}", k, v);
    }
    for p in &c.singular_points {
        let coords: Vec<String> = p.point.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        let _ = writeln!(
            out,
            "  {} ({}): {}{}",
            p.chart,
            coords.join(", "),
            p.branch_type,
            if p.totally_ramified { ", totally ramified" } else { "" }
        );
    }
    let _ = writeln!(out, "{:<22}{}", "certificates", c.certificates.len());
    for cert in &c.certificates {
        let shown = if cert.polys.len() == 1 && cert.polys[0].len() <= 60 {
            cert.polys[0].clone()
        } else {
            format!("{} polynomial{}", cert.polys.len(), if cert.polys.len() == 1 { "" } else { "s" })
        };
        let _ = writeln!(out, "  {}: {}", cert.name, shown);
    }
    for d in &c.diagnostics {
        let _ = writeln!(out, "note: {}", d);
    }
    let _ = writeln!(out, "input sha256          {}", r.provenance.input_sha256);
    out
}
