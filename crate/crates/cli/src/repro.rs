//! Replays of the built-in datasets and of the three machine sessions.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use tricover::cover::{classify_cover, cubic_on, CaseLabel, CoverError, CoverSpec};
use tricover::f3::Chart;
use tricover::ideal::{groebner, rational_solutions_with, Ideal, SolverConfig, SolverError};
use tricover::poly::{MultiPoly, Rational};

use crate::commands::{Outcome, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_RESOURCE};
use crate::datasets;
use crate::report::{render_table, Provenance, Report};

pub const CASES: [&str; 6] = ["M1", "M2", "M3", "M4_PinZ", "M4_PnotinZ", "N"];

const GOLDEN_SOLUTIONS: &str = include_str!("../golden/appendix_solutions.txt");
const GOLDEN_DISCRIMINANT_N: &str = include_str!("../golden/discriminant_N.txt");

pub fn repro(name: &str, json: bool) -> Outcome {
    if name == "appendix" {
        return appendix(json);
    }
    if !CASES.contains(&name) {
        return Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: unknown dataset `{}` (expected one of {}, appendix)\n", name, CASES.join(", ")),
        };
    }
    let d = datasets::get(name).expect("every case has a dataset");
    let expected: CaseLabel = name.parse().expect("case names are labels");
    let spec = d.cover_file().to_spec().expect("built-ins validate");
    let report = match classify_cover(&spec) {
        Ok(r) => Report::new(Provenance::new(d.text.as_bytes(), SolverConfig::default().spair_budget, Chart::V0), r),
        Err(e) => return error_outcome(&e),
    };
    let mut out = Outcome::default();
    if json {
        out.stdout = report.to_json();
    } else {
        let c = &report.classification;
        let _ = writeln!(out.stdout, "dataset {}", d.file_name);
        for line in d.text.lines().filter(|l| !l.trim().is_empty()) {
            let _ = writeln!(out.stdout, "  {}", line);
        }
        let pts: Vec<String> = c
            .singular_points
            .iter()
            .map(|p| {
                let coords: Vec<String> = ["z", "u", "t"].iter().map(|v| format!("{}={}", v, p.point[*v])).collect();
                format!("[{}]", coords.join(","))
            })
            .collect();
        let _ = writeln!(out.stdout, "singular points over V0 (z,u,t): [{}]", pts.join(","));
        let _ = writeln!(
            out.stdout,
            "over infinity: {}",
            if c.smooth_over_infinity { "no singular points" } else { "singular" }
        );
        out.stdout.push_str(&render_table(&report));
    }
    let got = report.classification.case_label;
    if got != expected {
        out.code = EXIT_MISMATCH;
        out.stderr = format!("{}: expected {}, classified as {}\n", name, expected, got);
    }
    out
}

fn error_outcome(e: &CoverError) -> Outcome {
    Outcome {
        code: if e.is_resource() { EXIT_RESOURCE } else { EXIT_MISMATCH },
        stdout: String::new(),
        stderr: format!("error: {}\n", e),
    }
}

/// One Jacobian system with its basis and rational solutions.
#[derive(Debug, Clone, Serialize)]
pub struct SystemRun {
    pub vars: Vec<String>,
    pub system: Vec<String>,
    pub basis: Vec<String>,
    pub solutions: String,
    pub complete_over_c: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Session {
    pub name: String,
    pub dataset: String,
    pub sing: SystemRun,
    pub discriminant: String,
    pub sing0: SystemRun,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    pub key: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixReport {
    pub schema: u32,
    pub sessions: Vec<Session>,
    pub diff: Vec<DiffEntry>,
}

/// Session name and the dataset it replays.
pub const SESSIONS: [(&str, &str); 3] = [("N", "N"), ("M2", "M2"), ("M3", "M3_session")];

fn run_system(system: Vec<MultiPoly>, priority: &[&str], config: &SolverConfig) -> Result<SystemRun, SolverError> {
    let ideal = Ideal::new(system.clone(), priority)?;
    let gb = groebner(&ideal, config)?;
    let sols = rational_solutions_with(&ideal, &gb)?;
    Ok(SystemRun {
        vars: priority.iter().map(|s| s.to_string()).collect(),
        system: system.iter().map(|p| p.to_string()).collect(),
        basis: gb.polys().iter().map(|p| p.to_string()).collect(),
        solutions: sols.to_string(),
        complete_over_c: sols.complete_over_c,
    })
}

fn jacobian(f: &MultiPoly, order: &[&str]) -> Result<Vec<MultiPoly>, CoverError> {
    let mut out = vec![f.clone()];
    for v in order {
        out.push(f.differentiate(v)?);
    }
    Ok(out)
}

/// The V0 system `[f, f_z, f_t, f_u]` and the system `[f0, f0_z, f0_v,
/// f0_s, s]` along the ruling at infinity, for the dataset's cubic.
pub fn run_session(name: &str, spec: &CoverSpec, dataset: &str) -> Result<(Session, MultiPoly), CoverError> {
    let config = SolverConfig::default();
    let c0 = cubic_on(spec, Chart::V0)?;
    let sing = run_system(jacobian(&c0.polynomial(), &["z", "t", "u"])?, &["z", "u", "t"], &config)?;
    let disc = c0.discriminant();
    let c1 = cubic_on(spec, Chart::V1)?;
    let f0 = c1.polynomial();
    let mut sys0 = jacobian(&f0, &["z", "v", "s"])?;
    sys0.push(MultiPoly::var(&["z", "s", "v"], "s")?);
    let sing0 = run_system(sys0, &["z", "v", "s"], &config)?;
    let session = Session { name: name.into(), dataset: dataset.into(), sing, discriminant: disc.to_string(), sing0 };
    Ok((session, disc))
}

fn golden_solutions() -> BTreeMap<String, String> {
    GOLDEN_SOLUTIONS
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once('=').map(|(k, v)| (k.trim().to_string(), v.trim().to_string())))
        .collect()
}

/// The stored expansion of `4r³ + 27s²` for case N.
pub fn golden_discriminant_n() -> MultiPoly {
    let body: String = GOLDEN_DISCRIMINANT_N.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join(" ");
    MultiPoly::parse(&body, &["t", "u"]).expect("golden expansion parses")
}

/// Coefficient-wise differences `(monomial, expected, actual)`.
pub fn poly_diff(key: &str, expected: &MultiPoly, actual: &MultiPoly) -> Vec<DiffEntry> {
    let vars = expected.vars().to_vec();
    let actual = actual.align_to(&vars).expect("same variables");
    let mut monos: Vec<Vec<u32>> = expected.terms().chain(actual.terms()).map(|(e, _)| e.clone()).collect();
    monos.sort();
    monos.dedup();
    let mono_text = |e: &[u32]| {
        let m = MultiPoly::from_terms(vars.clone(), [(e.to_vec(), Rational::from_integer(1.into()))]);
        m.to_string()
    };
    monos
        .iter()
        .filter_map(|e| {
            let (x, y) = (expected.coefficient(e), actual.coefficient(e));
            (x != y).then(|| DiffEntry { key: format!("{} [{}]", key, mono_text(e)), expected: x.to_string(), actual: y.to_string() })
        })
        .collect()
}

pub fn appendix_diff(sessions: &[Session], disc_n: &MultiPoly) -> Vec<DiffEntry> {
    let golden = golden_solutions();
    let mut diff = Vec::new();
    for s in sessions {
        for (suffix, run) in [("sing", &s.sing), ("sing0", &s.sing0)] {
            let key = format!("{}.{}", s.name, suffix);
            let expected = golden.get(&key).cloned().unwrap_or_else(|| "<missing>".into());
            let actual = if run.complete_over_c { run.solutions.clone() } else { format!("{} (incomplete)", run.solutions) };
            if expected != actual {
                diff.push(DiffEntry { key, expected, actual });
            }
        }
    }
    diff.extend(poly_diff("N.discriminant", &golden_discriminant_n(), disc_n));
    diff
}

fn write_system(out: &mut String, label: &str, run: &SystemRun) {
    let _ = writeln!(out, "{} over ({}):", label, run.vars.join(","));
    for p in &run.system {
        let _ = writeln!(out, "    {}", p);
    }
    let _ = writeln!(out, "  basis:");
    for p in &run.basis {
        let _ = writeln!(out, "    {}", p);
    }
    let _ = writeln!(out, "  solutions: {}{}", run.solutions, if run.complete_over_c { "" } else { " (incomplete over C)" });
}

pub fn appendix(json: bool) -> Outcome {
    let results: Vec<Result<(Session, MultiPoly), CoverError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = SESSIONS
            .iter()
            .map(|(name, ds)| {
                scope.spawn(move || {
                    let d = datasets::get(ds).expect("session dataset");
                    let spec = d.cover_file().to_spec().expect("built-ins validate");
                    run_session(name, &spec, d.file_name)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("session thread")).collect()
    });
    let mut sessions = Vec::new();
    let mut disc_n = None;
    for r in results {
        match r {
            Ok((s, d)) => {
                if s.name == "N" {
                    disc_n = Some(d);
                }
                sessions.push(s);
            }
            Err(e) => return error_outcome(&e),
        }
    }
    let diff = appendix_diff(&sessions, &disc_n.expect("session N ran"));
    let mut out = Outcome { code: if diff.is_empty() { EXIT_OK } else { EXIT_MISMATCH }, ..Default::default() };
    if json {
        let report = AppendixReport { schema: crate::report::SCHEMA, sessions, diff };
        out.stdout = serde_json::to_string_pretty(&report).expect("serializes") + "\n";
        return out;
    }
    for s in &sessions {
        let _ = writeln!(out.stdout, "== session {} ({})", s.name, s.dataset);
        write_system(&mut out.stdout, "sing", &s.sing);
        let _ = writeln!(out.stdout, "discriminant:\n    {}", s.discriminant);
        write_system(&mut out.stdout, "sing0", &s.sing0);
        let _ = writeln!(out.stdout);
    }
    if diff.is_empty() {
        let _ = writeln!(out.stdout, "golden: solution sets and the N discriminant match");
    } else {
        let _ = writeln!(out.stderr, "golden mismatch ({} entries):", diff.len());
        for d in &diff {
            let _ = writeln!(out.stderr, "  {}\n    expected: {}\n    actual:   {}", d.key, d.expected, d.actual);
        }
    }
    out
}
