//! The flat `key = value` cover description format.
//!
//! ```text
//! # case N
//! preset = "N"
//! form = "cubic_rs"
//! galois = false
//! r = "36*u^3-45*u^2+18*u-3+3*t^10-3*t^9+3*t^8"
//! s = "-27*u^5+135*u^4-144*u^3+72*u^2-18*u+2"
//! spair_budget = 100000
//! ```
//!
//! Strings are double-quoted without escapes; `galois` is `true`/`false`;
//! `spair_budget` is a positive integer; `chart` (`V0` or `V1`, default
//! `V0`) names the chart whose coordinates the sections are written in:
//! `t, u` on V0, `s, v` on V1.

use std::fmt;

use crate::cover::{CoverError, CoverSpec, PresetTag};
use crate::f3::Chart;
use crate::poly::PolyError;

const SECTION_KEYS: [&str; 6] = ["a", "b", "c", "d", "r", "s"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverFile {
    pub preset: PresetTag,
    pub form: String,
    pub galois: bool,
    /// Section name, expression text, line number.
    pub sections: Vec<(String, String, usize)>,
    pub chart: Option<Chart>,
    pub spair_budget: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverFileError {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for CoverFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(c) => write!(f, "line {}, column {}: {}", self.line, c, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

impl std::error::Error for CoverFileError {}

fn err(line: usize, message: impl Into<String>) -> CoverFileError {
    CoverFileError { line, column: None, message: message.into() }
}

enum Value<'a> {
    Str(&'a str),
    Bare(&'a str),
}

fn split_line(raw: &str, line: usize) -> Result<Option<(&str, Value<'_>, usize)>, CoverFileError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let eq = raw.find('=').ok_or_else(|| err(line, "expected `key = value`"))?;
    let key = raw[..eq].trim();
    if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(err(line, format!("invalid key `{}`", key)));
    }
    let rest = &raw[eq + 1..];
    let lead = rest.len() - rest.trim_start().len();
    let rest_t = rest.trim();
    let value_col = eq + 1 + lead + 1;
    if let Some(body) = rest_t.strip_prefix('"') {
        let close = body.find('"').ok_or_else(|| err(line, "unterminated string"))?;
        let tail = body[close + 1..].trim();
        if !tail.is_empty() && !tail.starts_with('#') {
            return Err(err(line, format!("unexpected text after string: `{}`", tail)));
        }
        Ok(Some((key, Value::Str(&body[..close]), value_col + 1)))
    } else {
        let v = rest_t.split('#').next().unwrap().trim();
        if v.is_empty() {
            return Err(err(line, format!("missing value for `{}`", key)));
        }
        Ok(Some((key, Value::Bare(v), value_col)))
    }
}

fn text<'a>(v: &Value<'a>) -> &'a str {
    match v {
        Value::Str(s) | Value::Bare(s) => s,
    }
}

pub fn parse_cover_file(input: &str) -> Result<CoverFile, CoverFileError> {
    let mut preset = None;
    let mut form = None;
    let mut galois = None;
    let mut chart = None;
    let mut spair_budget = None;
    let mut sections: Vec<(String, String, usize)> = Vec::new();
    let mut seen: Vec<&str> = Vec::new();
    let mut columns: Vec<usize> = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let Some((key, value, col)) = split_line(raw, line)? else { continue };
        if seen.contains(&key) {
            return Err(err(line, format!("duplicate key `{}`", key)));
        }
        seen.push(key);
        match key {
            "preset" => {
                preset = Some(text(&value).parse::<PresetTag>().map_err(|e| err(line, e.to_string()))?);
            }
            "form" => {
                let f = text(&value);
                if !["general", "cubic_rs", "cubic_3dc"].contains(&f) {
                    return Err(err(line, format!("unknown form `{}` (general, cubic_rs, cubic_3dc)", f)));
                }
                form = Some(f.to_string());
            }
            "galois" => {
                galois = Some(match text(&value) {
                    "true" => true,
                    "false" => false,
                    other => return Err(err(line, format!("expected true or false, found `{}`", other))),
                });
            }
            "chart" => {
                let c: Chart = text(&value).parse().map_err(|e: crate::f3::F3Error| err(line, e.to_string()))?;
                if c.is_sigma_chart() {
                    return Err(err(line, "chart must be V0 or V1"));
                }
                chart = Some(c);
            }
            "spair_budget" => {
                let n: usize = text(&value)
                    .parse()
                    .ok()
                    .filter(|n| *n > 0)
                    .ok_or_else(|| err(line, format!("expected a positive integer, found `{}`", text(&value))))?;
                spair_budget = Some(n);
            }
            k if SECTION_KEYS.contains(&k) => {
                let Value::Str(expr) = value else {
                    return Err(CoverFileError {
                        line,
                        column: Some(col),
                        message: format!("section `{}` must be a quoted expression", k),
                    });
                };
                sections.push((k.to_string(), expr.to_string(), line));
                columns.push(col);
            }
            other => return Err(err(line, format!("unknown key `{}`", other))),
        }
    }
    let last = input.lines().count().max(1);
    let preset = preset.ok_or_else(|| err(last, "missing key `preset`"))?;
    let form = form.ok_or_else(|| err(last, "missing key `form`"))?;
    let required: &[&str] = match form.as_str() {
        "general" => &["a", "b", "c", "d"],
        "cubic_rs" => &["r", "s"],
        _ => &["d", "c"],
    };
    for name in required {
        if !sections.iter().any(|(n, _, _)| n == name) {
            return Err(err(last, format!("form `{}` requires section `{}`", form, name)));
        }
    }
    if let Some((n, _, l)) = sections.iter().find(|(n, _, _)| !required.contains(&n.as_str())) {
        return Err(err(*l, format!("section `{}` is not used by form `{}`", n, form)));
    }
    // Syntax is checked here for positioned diagnostics, in the coordinates
    // of the declared chart; weights are checked by `to_spec`.
    let vars = chart.unwrap_or(Chart::V0).vars();
    for ((name, expr, line), col) in sections.iter().zip(&columns) {
        if let Err(e) = crate::poly::MultiPoly::parse(expr, &vars) {
            let column = match &e {
                PolyError::Syntax { pos, .. } | PolyError::UndeclaredVariable { pos, .. } => Some(col + pos),
                _ => Some(*col),
            };
            return Err(CoverFileError { line: *line, column, message: format!("section `{}`: {}", name, e) });
        }
    }
    Ok(CoverFile { preset, form, galois: galois.unwrap_or(false), sections, chart, spair_budget })
}

impl CoverFile {
    /// Builds the validated spec; weight errors point at the offending line.
    pub fn to_spec(&self) -> Result<CoverSpec, CoverFileError> {
        self.to_spec_on(self.chart.unwrap_or(Chart::V0))
    }

    /// Reads the sections in the coordinates of `chart` (V0 or V1).
    pub fn to_spec_on(&self, chart: Chart) -> Result<CoverSpec, CoverFileError> {
        let pairs: Vec<(&str, &str)> = self.sections.iter().map(|(n, e, _)| (n.as_str(), e.as_str())).collect();
        CoverSpec::parse_on(chart, self.preset, &self.form, &pairs, self.galois).map_err(|e| {
            let line = match &e {
                CoverError::WeightMismatch { name, .. }
                | CoverError::NotOnV0(name)
                | CoverError::InvalidSection { name, .. } => self.line_of(name),
                _ => None,
            };
            let line = line.or_else(|| self.sections.first().map(|s| s.2)).unwrap_or(1);
            err(line, e.to_string())
        })
    }

    fn line_of(&self, name: &str) -> Option<usize> {
        self.sections.iter().find(|(n, _, _)| n == name).map(|s| s.2)
    }

    /// Canonical rendering, stable under re-parsing.
    pub fn render(&self) -> String {
        let mut out = format!("preset = \"{}\"\nform = \"{}\"\ngalois = {}\n", self.preset, self.form, self.galois);
        for (n, e, _) in &self.sections {
            out.push_str(&format!("{} = \"{}\"\n", n, e));
        }
        if let Some(c) = self.chart {
            out.push_str(&format!("chart = \"{}\"\n", c));
        }
        if let Some(b) = self.spair_budget {
            out.push_str(&format!("spair_budget = {}\n", b));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: &str = "# case N\npreset = \"N\"\nform = \"cubic_rs\"\ngalois = false\nr = \"36*u^3-45*u^2+18*u-3+3*t^10-3*t^9+3*t^8\"\ns = \"-27*u^5+135*u^4-144*u^3+72*u^2-18*u+2\"\n";

    #[test]
    fn parses_and_builds() {
        let f = parse_cover_file(N).unwrap();
        assert_eq!(f.preset, PresetTag::N);
        assert_eq!(f.sections.len(), 2);
        assert_eq!(f.sections[1].2, 6);
        f.to_spec().unwrap();
        assert_eq!(parse_cover_file(&f.render()).unwrap().render(), f.render());
    }

    #[test]
    fn malformed_polynomial_has_position() {
        let bad = N.replace("36*u^3", "36*u^^3");
        let e = parse_cover_file(&bad).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.column.is_some());
        assert!(e.to_string().starts_with("line 5, column"));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(parse_cover_file("preset = \"N\"\nform = \"cubic_rs\"\nr = \"1\"\n").unwrap_err().message, "form `cubic_rs` requires section `s`");
        assert_eq!(parse_cover_file("preset = \"X\"\n").unwrap_err().line, 1);
        assert!(parse_cover_file("preset = \"N\"\npreset = \"N\"\n").unwrap_err().message.contains("duplicate"));
        assert!(parse_cover_file("nonsense\n").is_err());
        assert!(parse_cover_file("preset = \"N\nform = 1\n").is_err());
        assert!(parse_cover_file(&format!("{}spair_budget = 0\n", N)).is_err());
        assert!(parse_cover_file(&format!("{}chart = W0\n", N)).is_err());
        assert!(parse_cover_file(&format!("{}a = \"1\"\n", N)).is_err());
    }

    #[test]
    fn sections_on_v1() {
        let v1 = "preset = \"N\"\nform = \"cubic_rs\"\nchart = \"V1\"\nr = \"36*s*v^3-45*s^4*v^2+18*s^7*v-3*s^10+3-3*s+3*s^2\"\ns = \"-27*v^5+135*s^3*v^4-144*s^6*v^3+72*s^9*v^2-18*s^12*v+2*s^15\"\n";
        let a = parse_cover_file(v1).unwrap().to_spec().unwrap();
        let b = parse_cover_file(N).unwrap().to_spec().unwrap();
        assert_eq!(a, b);
        // t, u are not coordinates of V1.
        assert_eq!(parse_cover_file(&format!("{}chart = V1\n", N)).unwrap_err().line, 5);
    }

    #[test]
    fn weight_error_points_at_section() {
        let bad = N.replace("-27*u^5", "-27*u^6");
        let e = parse_cover_file(&bad).unwrap().to_spec().unwrap_err();
        assert_eq!(e.line, 6);
    }
}
