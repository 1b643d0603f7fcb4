//! The classification pipeline and the invariant table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::f3::{canonical_class, h0, Chart, DivisorClass};
use crate::ideal::{GroebnerBasis, SolverConfig};
use crate::poly::{MultiPoly, PlanePoint};

use super::branch::{analyse_branch_point, is_totally_ramified_at, SingularityType};
use super::smooth::{check_smooth_over_infinity_with, singular_locus};
use super::{cubic_on, CoverError, CoverForm, CoverSpec, PresetTag, TraceModulePreset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    M1,
    M2,
    M3,
    #[serde(rename = "M4_PinZ")]
    M4PinZ,
    #[serde(rename = "M4_PnotinZ")]
    M4PnotinZ,
    N,
    Unclassified,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 7] = [
        CaseLabel::M1,
        CaseLabel::M2,
        CaseLabel::M3,
        CaseLabel::M4PinZ,
        CaseLabel::M4PnotinZ,
        CaseLabel::N,
        CaseLabel::Unclassified,
    ];

    /// `(K², p_g)` of the surface attached to the case.
    pub fn invariants(self) -> Option<(i64, i64)> {
        match self {
            CaseLabel::M1 => Some((9, 5)),
            CaseLabel::M2 => Some((8, 4)),
            CaseLabel::M3 => Some((7, 4)),
            CaseLabel::M4PinZ | CaseLabel::M4PnotinZ => Some((6, 4)),
            CaseLabel::N => Some((8, 4)),
            CaseLabel::Unclassified => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::M1 => "M1",
            CaseLabel::M2 => "M2",
            CaseLabel::M3 => "M3",
            CaseLabel::M4PinZ => "M4_PinZ",
            CaseLabel::M4PnotinZ => "M4_PnotinZ",
            CaseLabel::N => "N",
            CaseLabel::Unclassified => "Unclassified",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CaseLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        CaseLabel::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown case `{}`", s))
    }
}

mod rat_map {
    use std::collections::BTreeMap;

    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use crate::poly::{PlanePoint, Rational};

    pub fn serialize<S: Serializer>(p: &PlanePoint, ser: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<&str, String> = p.iter().map(|(k, v)| (k.as_str(), v.to_string())).collect();
        m.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<PlanePoint, D::Error> {
        let m = BTreeMap::<String, String>::deserialize(de)?;
        m.into_iter()
            .map(|(k, v)| {
                let r: Rational = v.parse().map_err(|_| D::Error::custom(format!("bad rational `{}`", v)))?;
                Ok((k, r))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub chart: Chart,
    /// Coordinates on the cover, fibre coordinate `z` included.
    #[serde(with = "rat_map")]
    pub point: PlanePoint,
    pub branch_type: SingularityType,
    pub totally_ramified: bool,
}

/// Evidence behind a verdict, polynomials in canonical text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub chart: Option<Chart>,
    pub vars: Vec<String>,
    pub polys: Vec<String>,
}

impl Certificate {
    fn basis(name: impl Into<String>, chart: Chart, gb: &GroebnerBasis) -> Self {
        Certificate {
            name: name.into(),
            chart: Some(chart),
            vars: gb.vars().to_vec(),
            polys: gb.polys().iter().map(|p| p.to_string()).collect(),
        }
    }

    fn poly(name: impl Into<String>, chart: Chart, p: &MultiPoly) -> Self {
        Certificate { name: name.into(), chart: Some(chart), vars: p.vars().to_vec(), polys: vec![p.to_string()] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub case_label: CaseLabel,
    #[serde(rename = "K2")]
    pub k2: Option<i64>,
    pub pg: Option<i64>,
    pub preset: PresetTag,
    pub form: String,
    pub galois: bool,
    pub smooth_over_infinity: bool,
    pub sigma_fast_path: Option<bool>,
    pub singular_points: Vec<SingularPoint>,
    pub certificates: Vec<Certificate>,
    pub diagnostics: Vec<String>,
}

fn point_text(p: &PlanePoint) -> String {
    let parts: Vec<String> = p.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
    format!("({})", parts.join(","))
}

pub fn classify_cover(spec: &CoverSpec) -> Result<ClassificationReport, CoverError> {
    classify_cover_with(spec, &SolverConfig::default())
}

/// Runs the pipeline: smoothness over infinity, singular points over V0,
/// their branch type and ramification, then the case table.
pub fn classify_cover_with(spec: &CoverSpec, config: &SolverConfig) -> Result<ClassificationReport, CoverError> {
    let preset = spec.preset();
    let mut report = ClassificationReport {
        case_label: CaseLabel::Unclassified,
        k2: None,
        pg: None,
        preset: preset.tag,
        form: spec.form().name().to_string(),
        galois: spec.galois(),
        smooth_over_infinity: false,
        sigma_fast_path: None,
        singular_points: vec![],
        certificates: vec![],
        diagnostics: vec![],
    };

    let inf = check_smooth_over_infinity_with(spec, config)?;
    for piece in &inf.pieces {
        report.certificates.push(Certificate::basis(
            format!("jacobian ideal, {} ({:?})", piece.model.describe(), piece.model.route),
            piece.model.chart,
            &piece.basis,
        ));
    }
    report.smooth_over_infinity = inf.smooth();
    report.sigma_fast_path = inf.sigma_fast_path;
    if let Some(fast) = inf.sigma_fast_path {
        if fast != inf.sigma_smooth() {
            report.diagnostics.push(format!(
                "closed-form criterion along σ∞ says {} but the ideal check says {}; the ideal check is used",
                fast,
                inf.sigma_smooth()
            ));
        }
    }
    if !report.smooth_over_infinity {
        for piece in inf.pieces.iter().filter(|p| !p.smooth()) {
            report.diagnostics.push(format!("cover is singular over {}", piece.model.describe()));
        }
        return Ok(report);
    }

    let cubic = cubic_on(spec, Chart::V0).ok();
    if let Some(c) = &cubic {
        if c.is_degenerate() {
            report.diagnostics.push("discriminant vanishes identically; the cover is not reduced".into());
            return Ok(report);
        }
    }

    let locus = singular_locus(spec, Chart::V0, config)?;
    for (model, gb, _) in &locus.pieces {
        report.certificates.push(Certificate::basis(
            format!("jacobian ideal, {} ({:?})", model.describe(), model.route),
            Chart::V0,
            gb,
        ));
    }
    let sols = locus.solutions;
    if !sols.complete_over_c {
        for r in &sols.residual {
            report.diagnostics.push(format!(
                "singular locus has non-rational points: factor of degree {} in {} over {}",
                r.degree,
                r.variable,
                point_text(&r.partial)
            ));
        }
        return Ok(report);
    }

    if !sols.is_empty() {
        let Some(cubic) = cubic else {
            report.diagnostics.push("singular points found but b is not a unit on V0; no cubic model".into());
            return Ok(report);
        };
        // The curve whose singularities matter: D₀ = {c = 0} for Galois
        // covers (D = 2σ∞ + 2D₀), the discriminant otherwise.
        let (curve, curve_name) = if spec.galois() && spec.has_galois_shape() {
            let d0 = match spec.form() {
                CoverForm::CubicRS { s, .. } => s.poly().clone(),
                _ => spec.general_data().expect("structure data")[2].poly().clone(),
            };
            (d0, "D0")
        } else {
            (cubic.discriminant(), "discriminant")
        };
        report.certificates.push(Certificate::poly(format!("branch curve ({})", curve_name), Chart::V0, &curve));
        for pt in &sols.points {
            let base: PlanePoint = pt.iter().filter(|(k, _)| *k == "t" || *k == "u").map(|(k, v)| (k.clone(), v.clone())).collect();
            let analysis = analyse_branch_point(&curve, &base)?;
            let label = point_text(&base);
            if let Some(cone) = &analysis.tangent_cone {
                report.certificates.push(Certificate::poly(format!("lowest form at {}", label), Chart::V0, cone));
            }
            if let Some(st) = &analysis.strict_transform {
                report.certificates.push(Certificate::poly(format!("strict transform at {}", label), Chart::V0, st));
            }
            report.singular_points.push(SingularPoint {
                chart: Chart::V0,
                point: pt.clone(),
                branch_type: analysis.kind,
                totally_ramified: is_totally_ramified_at(spec, &base)?,
            });
        }
    }

    let label = table_lookup(spec, &report.singular_points);
    match label {
        Some(l) => {
            report.case_label = l;
            let (k2, pg) = l.invariants().expect("classified");
            report.k2 = Some(k2);
            report.pg = Some(pg);
        }
        None => {
            let desc: Vec<String> = report
                .singular_points
                .iter()
                .map(|p| {
                    format!(
                        "{} over a branch point of type {}{}",
                        point_text(&p.point),
                        p.branch_type,
                        if p.totally_ramified { ", totally ramified" } else { "" }
                    )
                })
                .collect();
            report.diagnostics.push(format!(
                "no case of the table matches preset {} with singular points [{}]",
                preset.tag,
                desc.join("; ")
            ));
        }
    }
    Ok(report)
}

fn table_lookup(spec: &CoverSpec, points: &[SingularPoint]) -> Option<CaseLabel> {
    use SingularityType::*;
    let tag = spec.preset().tag;
    match (tag, points) {
        (PresetTag::Mi, []) => Some(CaseLabel::M1),
        (PresetTag::Mii, []) => Some(CaseLabel::M4PnotinZ),
        (PresetTag::Mi, [p]) if spec.galois() && spec.has_galois_shape() => {
            (p.branch_type == OrdinaryMultiple { m: 3 }).then_some(CaseLabel::M4PinZ)
        }
        (PresetTag::Mi, [p]) if !p.totally_ramified => match p.branch_type {
            TripleTriple => Some(CaseLabel::M2),
            OrdinaryMultiple { m: 4 } => Some(CaseLabel::M3),
            _ => None,
        },
        (PresetTag::N, [p]) if !p.totally_ramified => {
            (p.branch_type == OrdinaryMultiple { m: 8 }).then_some(CaseLabel::N)
        }
        _ => None,
    }
}

/// `(p_g(X), χ(O_X))` of a smooth cover, from `π_*ω_X = ω ⊕ ω⊗L1 ⊕ ω⊗L2`.
pub fn invariants_pushforward(preset: TraceModulePreset) -> (i64, i64) {
    let k = canonical_class();
    let pg = [DivisorClass::new(0, 0), preset.l1, preset.l2].iter().map(|l| h0(k + *l) as i64).sum();
    let half = |l: DivisorClass| l.dot(l + k) / 2;
    (pg, 3 + half(preset.l1) + half(preset.l2))
}

/// Genus of the cover of a ruling: `2g − 2 = 3·(−2) + D·R`, `D = 2(L1 + L2)`.
pub fn fiber_genus(preset: TraceModulePreset) -> i64 {
    let dr = preset.branch_class().dot(DivisorClass::RULING);
    (-6 + dr + 2) / 2
}
