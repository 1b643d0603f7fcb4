//! Triple covers of F₃: construction from trace-module data, reduction to a
//! cubic, branch discriminants, smoothness certificates and the case table.

mod branch;
mod classify;
mod smooth;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::f3::{Chart, DivisorClass, F3Error, Section};
use crate::ideal::SolverError;
use crate::poly::{rat, MultiPoly, PolyError, Rational};

pub use branch::{classify_branch_point, is_totally_ramified_at, BranchAnalysis, SingularityType};
pub use classify::{
    classify_cover, classify_cover_with, fiber_genus, invariants_pushforward, CaseLabel, Certificate,
    ClassificationReport, SingularPoint,
};
pub use smooth::{
    chart_model, check_smooth_over_infinity, check_smooth_over_infinity_with, locus_models, singular_locus,
    singular_locus_v0, BoundaryCheck, ChartModel, InfinityCheck, Region, SingularLocus, SmoothnessRoute,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PresetTag {
    Mi,
    Mii,
    N,
}

impl fmt::Display for PresetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl std::str::FromStr for PresetTag {
    type Err = CoverError;
    fn from_str(s: &str) -> Result<Self, CoverError> {
        match s {
            "Mi" => Ok(PresetTag::Mi),
            "Mii" => Ok(PresetTag::Mii),
            "N" => Ok(PresetTag::N),
            _ => Err(CoverError::UnknownPreset(s.to_string())),
        }
    }
}

/// The trace-zero module `E = L1⁻¹ ⊕ L2⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TraceModulePreset {
    pub tag: PresetTag,
    pub l1: DivisorClass,
    pub l2: DivisorClass,
}

impl TraceModulePreset {
    pub fn new(tag: PresetTag) -> Self {
        let (l1, l2) = match tag {
            PresetTag::Mi => ((2, 4), (3, 8)),
            PresetTag::Mii => ((2, 5), (3, 7)),
            PresetTag::N => ((2, 5), (4, 10)),
        };
        TraceModulePreset {
            tag,
            l1: DivisorClass::new(l1.0, l1.1),
            l2: DivisorClass::new(l2.0, l2.1),
        }
    }

    /// Weights of `a, b, c, d`: `L1, 2L1 − L2, 2L2 − L1, L2`.
    pub fn general_weights(&self) -> [DivisorClass; 4] {
        let (l1, l2) = (self.l1, self.l2);
        [l1, 2 * l1 - l2, 2 * l2 - l1, l2]
    }

    /// Weights of `r, s`: `2L1, 3L1`.
    pub fn cubic_weights(&self) -> [DivisorClass; 2] {
        [2 * self.l1, 3 * self.l1]
    }

    /// Branch class `2(L1 + L2)`.
    pub fn branch_class(&self) -> DivisorClass {
        2 * (self.l1 + self.l2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverForm {
    General { a: Section, b: Section, c: Section, d: Section },
    CubicRS { r: Section, s: Section },
    /// `z³ + 3dz − c`, i.e. the general form with `a = 0`, `b = 1`.
    Cubic3DC { d: Section, c: Section },
}

impl CoverForm {
    pub fn name(&self) -> &'static str {
        match self {
            CoverForm::General { .. } => "general",
            CoverForm::CubicRS { .. } => "cubic_rs",
            CoverForm::Cubic3DC { .. } => "cubic_3dc",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("section `{name}` has weight {found}, expected {expected}")]
    WeightMismatch { name: String, expected: DivisorClass, found: DivisorClass },
    #[error("section `{name}`: {reason}")]
    InvalidSection { name: String, reason: F3Error },
    #[error("section `{0}` must be given on chart V0")]
    NotOnV0(String),
    #[error("form {form} is not available for preset {preset}")]
    FormUnavailable { form: String, preset: PresetTag },
    #[error("a Galois cover needs a = d = 0 (r = 0 in cubic form)")]
    NotGalois,
    #[error("b is not a nonzero constant on chart {0}; w cannot be eliminated")]
    BNotUnit(Chart),
    #[error("the discriminant vanishes identically; the cover is degenerate")]
    Degenerate,
    #[error(transparent)]
    Geometry(#[from] F3Error),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl CoverError {
    pub fn is_resource(&self) -> bool {
        matches!(self, CoverError::Solver(SolverError::Resource { .. }))
    }
}

/// A validated cover description: every section sits on V0 with the weight
/// the preset prescribes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    preset: TraceModulePreset,
    form: CoverForm,
    galois: bool,
}

fn expect_weight(name: &str, s: &Section, w: DivisorClass) -> Result<(), CoverError> {
    if s.chart() != Chart::V0 {
        return Err(CoverError::NotOnV0(name.to_string()));
    }
    if s.weight() != w {
        return Err(CoverError::WeightMismatch { name: name.to_string(), expected: w, found: s.weight() });
    }
    Ok(())
}

impl CoverSpec {
    pub fn new(preset: TraceModulePreset, form: CoverForm, galois: bool) -> Result<Self, CoverError> {
        let [wa, wb, wc, wd] = preset.general_weights();
        match &form {
            CoverForm::General { a, b, c, d } => {
                expect_weight("a", a, wa)?;
                expect_weight("b", b, wb)?;
                expect_weight("c", c, wc)?;
                expect_weight("d", d, wd)?;
                if galois && !(a.is_zero() && d.is_zero()) {
                    return Err(CoverError::NotGalois);
                }
            }
            CoverForm::CubicRS { r, s } => {
                if preset.l2 != 2 * preset.l1 {
                    return Err(CoverError::FormUnavailable { form: form.name().into(), preset: preset.tag });
                }
                let [wr, ws] = preset.cubic_weights();
                expect_weight("r", r, wr)?;
                expect_weight("s", s, ws)?;
                if galois && !r.is_zero() {
                    return Err(CoverError::NotGalois);
                }
            }
            CoverForm::Cubic3DC { d, c } => {
                if wb.a < 0 || wb.b < 0 {
                    return Err(CoverError::FormUnavailable { form: form.name().into(), preset: preset.tag });
                }
                expect_weight("c", c, wc)?;
                expect_weight("d", d, wd)?;
                if galois && !d.is_zero() {
                    return Err(CoverError::NotGalois);
                }
            }
        }
        Ok(CoverSpec { preset, form, galois })
    }

    /// Parses V0 expressions over `t, u` and assigns the preset weights.
    pub fn parse(tag: PresetTag, form: &str, sections: &[(&str, &str)], galois: bool) -> Result<Self, CoverError> {
        Self::parse_on(Chart::V0, tag, form, sections, galois)
    }

    /// As [`CoverSpec::parse`], with expressions written in the coordinates
    /// of `chart` and moved to V0.
    pub fn parse_on(chart: Chart, tag: PresetTag, form: &str, sections: &[(&str, &str)], galois: bool) -> Result<Self, CoverError> {
        let preset = TraceModulePreset::new(tag);
        let [wa, wb, wc, wd] = preset.general_weights();
        let [wr, ws] = preset.cubic_weights();
        let get = |name: &str, w: DivisorClass| -> Result<Section, CoverError> {
            let text = sections.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).unwrap_or("0");
            Section::parse(chart, text, w)
                .map(|s| s.to_chart(Chart::V0))
                .map_err(|reason| CoverError::InvalidSection { name: name.to_string(), reason })
        };
        let form = match form {
            "general" => CoverForm::General { a: get("a", wa)?, b: get("b", wb)?, c: get("c", wc)?, d: get("d", wd)? },
            "cubic_rs" => CoverForm::CubicRS { r: get("r", wr)?, s: get("s", ws)? },
            "cubic_3dc" => CoverForm::Cubic3DC { d: get("d", wd)?, c: get("c", wc)? },
            other => return Err(CoverError::FormUnavailable { form: other.to_string(), preset: tag }),
        };
        CoverSpec::new(preset, form, galois)
    }

    pub fn preset(&self) -> TraceModulePreset {
        self.preset
    }

    pub fn form(&self) -> &CoverForm {
        &self.form
    }

    pub fn galois(&self) -> bool {
        self.galois
    }

    /// `(a, b, c, d)` on V0, when the cover is given by structure data.
    pub fn general_data(&self) -> Option<[Section; 4]> {
        let [wa, wb, _, _] = self.preset.general_weights();
        match &self.form {
            CoverForm::General { a, b, c, d } => Some([a.clone(), b.clone(), c.clone(), d.clone()]),
            CoverForm::Cubic3DC { d, c } => {
                let zero = Section::new(Chart::V0, MultiPoly::zero(&["t", "u"]), wa).ok()?;
                let one = Section::new(Chart::V0, MultiPoly::constant(&["t", "u"], rat(1)), wb).ok()?;
                Some([zero, one, c.clone(), d.clone()])
            }
            CoverForm::CubicRS { .. } => None,
        }
    }

    /// Whether `a = d = 0` (`r = 0` in cubic form).
    pub fn has_galois_shape(&self) -> bool {
        match &self.form {
            CoverForm::General { a, d, .. } => a.is_zero() && d.is_zero(),
            CoverForm::CubicRS { r, .. } => r.is_zero(),
            CoverForm::Cubic3DC { d, .. } => d.is_zero(),
        }
    }
}

/// The three relations in `(z, w)` with coefficients over the chart
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralEquations {
    pub vars: Vec<String>,
    /// `z² − az − bw − A`, `zw + dz + aw + B`, `w² − cz − dw − C`.
    pub relations: [MultiPoly; 3],
    /// All structure data vanish: the relations define a non-reduced scheme.
    pub degenerate: bool,
}

fn on_chart(s: &Section, chart: Chart) -> MultiPoly {
    s.to_chart(chart).poly().clone()
}

/// `A = 2(a² − bd)`, `B = ad − bc`, `C = 2(d² − ac)`.
pub fn structure_constants(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, d: &MultiPoly) -> [MultiPoly; 3] {
    let two = rat(2);
    let big_a = (&(a * a) - &(b * d)).scale(&two);
    let big_b = &(a * d) - &(b * c);
    let big_c = (&(d * d) - &(a * c)).scale(&two);
    [big_a, big_b, big_c]
}

/// The relations of the cover on V0.
pub fn build_general_equations(a: &Section, b: &Section, c: &Section, d: &Section) -> Result<GeneralEquations, CoverError> {
    for (n, s) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if s.chart() != Chart::V0 {
            return Err(CoverError::NotOnV0(n.to_string()));
        }
    }
    // Homogeneity of the relations pins b, c, d against a.
    let l1 = a.weight();
    let l2 = d.weight();
    for (n, s, w) in [("b", b, 2 * l1 - l2), ("c", c, 2 * l2 - l1)] {
        expect_weight(n, s, w)?;
    }
    Ok(general_equations_on(a, b, c, d, Chart::V0))
}

pub(crate) fn general_equations_on(a: &Section, b: &Section, c: &Section, d: &Section, chart: Chart) -> GeneralEquations {
    let base = chart.vars();
    let vars: Vec<String> = ["z", "w", base[0], base[1]].iter().map(|s| s.to_string()).collect();
    let lift = |p: MultiPoly| p.align_to(&vars).expect("superset alignment");
    let [a, b, c, d] = [a, b, c, d].map(|s| lift(on_chart(s, chart)));
    let degenerate = a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero();
    let [ca, cb, cc] = structure_constants(&a, &b, &c, &d);
    let z = MultiPoly::var_owned(vars.clone(), "z").unwrap();
    let w = MultiPoly::var_owned(vars.clone(), "w").unwrap();
    let r1 = &(&(&(&z * &z) - &(&a * &z)) - &(&b * &w)) - &ca;
    let r2 = &(&(&(&z * &w) + &(&d * &z)) + &(&a * &w)) + &cb;
    let r3 = &(&(&(&w * &w) - &(&c * &z)) - &(&d * &w)) - &cc;
    GeneralEquations { vars, relations: [r1, r2, r3], degenerate }
}

/// `z³ + rz + s` on one chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicForm {
    pub chart: Chart,
    pub r: MultiPoly,
    pub s: MultiPoly,
    /// `z³ + 3dz − c`: the discriminant is normalised as `4d³ + c²`.
    pub three_d_c: bool,
}

impl CubicForm {
    pub fn vars(&self) -> Vec<String> {
        let base = self.chart.vars();
        ["z", base[0], base[1]].iter().map(|s| s.to_string()).collect()
    }

    /// `z³ + rz + s` over `(z, base, fibre)`.
    pub fn polynomial(&self) -> MultiPoly {
        let vars = self.vars();
        let z = MultiPoly::var_owned(vars.clone(), "z").unwrap();
        let r = self.r.align_to(&vars).unwrap();
        let s = self.s.align_to(&vars).unwrap();
        &(&(&(&z * &z) * &z) + &(&r * &z)) + &s
    }

    pub fn is_degenerate(&self) -> bool {
        self.discriminant().is_zero()
    }

    /// `4r³ + 27s²`, or `4d³ + c²` for the `3d/c` normalisation.
    pub fn discriminant(&self) -> MultiPoly {
        let r3 = &(&self.r * &self.r) * &self.r;
        let s2 = &self.s * &self.s;
        if self.three_d_c {
            // r = 3d, s = −c.
            &r3.scale(&Rational::new(4.into(), 27.into())) + &s2
        } else {
            &r3.scale(&rat(4)) + &s2.scale(&rat(27))
        }
    }

    /// The constant `κ` with `4r³ + 27s² = κ · discriminant()`.
    pub fn normalisation(&self) -> Rational {
        if self.three_d_c {
            rat(27)
        } else {
            Rational::one()
        }
    }
}

/// `r = 3(bd − a²)`, `s = −2a³ + 3abd − b²c`, valid when `b` is a unit.
pub(crate) fn cubic_from_general(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, d: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let r = (&(b * d) - &(a * a)).scale(&rat(3));
    let a3 = &(a * a) * a;
    let s = &(&a3.scale(&rat(-2)) + &(&(a * b) * d).scale(&rat(3))) - &(&(b * b) * c);
    (r, s)
}

/// The cubic model on `chart`; fails when `b` is not a nonzero constant there.
pub fn cubic_on(spec: &CoverSpec, chart: Chart) -> Result<CubicForm, CoverError> {
    match &spec.form {
        CoverForm::CubicRS { r, s } => Ok(CubicForm {
            chart,
            r: on_chart(r, chart),
            s: on_chart(s, chart),
            three_d_c: false,
        }),
        _ => {
            let [a, b, c, d] = spec.general_data().expect("structure data");
            let [a, b, c, d] = [&a, &b, &c, &d].map(|s| on_chart(s, chart));
            match b.as_constant() {
                Some(k) if !k.is_zero() => {}
                _ => return Err(CoverError::BNotUnit(chart)),
            }
            let (r, s) = cubic_from_general(&a, &b, &c, &d);
            let three_d_c = a.is_zero() && b.as_constant() == Some(Rational::one());
            Ok(CubicForm { chart, r, s, three_d_c })
        }
    }
}

/// `(r, s)` on V0 with `z³ + rz + s = 0`, as sections of `2L1`, `3L1`.
pub fn reduce_to_cubic(spec: &CoverSpec) -> Result<(Section, Section), CoverError> {
    let cubic = cubic_on(spec, Chart::V0)?;
    // bd, a² and b²c all have the weights of a², a³ since 2L1 = b + L2.
    let [wr, ws] = spec.preset.cubic_weights();
    let r = Section::new(Chart::V0, cubic.r, wr)?;
    let s = Section::new(Chart::V0, cubic.s, ws)?;
    if r.is_zero() && s.is_zero() {
        return Err(CoverError::Degenerate);
    }
    Ok((r, s))
}

/// The branch discriminant on V0.
pub fn branch_discriminant(spec: &CoverSpec) -> Result<MultiPoly, CoverError> {
    branch_discriminant_on(spec, Chart::V0)
}

pub fn branch_discriminant_on(spec: &CoverSpec, chart: Chart) -> Result<MultiPoly, CoverError> {
    let cubic = cubic_on(spec, chart)?;
    let disc = cubic.discriminant();
    if disc.is_zero() {
        return Err(CoverError::Degenerate);
    }
    Ok(disc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::resultant_in;

    fn m2() -> CoverSpec {
        CoverSpec::parse(
            PresetTag::Mi,
            "cubic_3dc",
            &[("d", "(1+t^2)*u^2+2*u-t^8+t^7-t^6-1"), ("c", "-2*u^4-2*u^3+6*u-2")],
            false,
        )
        .unwrap()
    }

    #[test]
    fn presets() {
        let mi = TraceModulePreset::new(PresetTag::Mi);
        assert_eq!(mi.general_weights().map(|d| (d.a, d.b)), [(2, 4), (1, 0), (4, 12), (3, 8)]);
        let mii = TraceModulePreset::new(PresetTag::Mii);
        assert_eq!(mii.general_weights().map(|d| (d.a, d.b)), [(2, 5), (1, 3), (4, 9), (3, 7)]);
        let n = TraceModulePreset::new(PresetTag::N);
        assert_eq!(n.cubic_weights().map(|d| (d.a, d.b)), [(4, 10), (6, 15)]);
        assert_eq!(mi.branch_class(), 2 * DivisorClass::SIGMA_INF + 8 * DivisorClass::SIGMA_0);
    }

    #[test]
    fn a0_b1_gives_3dc_cubic() {
        let spec = m2();
        let cubic = cubic_on(&spec, Chart::V0).unwrap();
        let [_, _, c, d] = spec.general_data().unwrap();
        assert!(cubic.three_d_c);
        assert_eq!(cubic.r, d.poly().scale(&rat(3)));
        assert_eq!(cubic.s, -c.poly());
    }

    #[test]
    fn relations_eliminate_to_cubic() {
        // w = z² + 2d, then the second relation is the cubic.
        let spec = m2();
        let [a, b, c, d] = spec.general_data().unwrap();
        let eq = build_general_equations(&a, &b, &c, &d).unwrap();
        let vars = eq.vars.clone();
        let z = MultiPoly::var_owned(vars.clone(), "z").unwrap();
        let dd = d.poly().align_to(&vars).unwrap();
        let w_val = &(&z * &z) + &dd.scale(&rat(2));
        let [r1, r2, r3] = &eq.relations;
        assert!(r1.compose(&[("w", w_val.clone())]).unwrap().is_zero());
        let f = cubic_on(&spec, Chart::V0).unwrap().polynomial().align_to(&vars).unwrap();
        assert_eq!(r2.compose(&[("w", w_val.clone())]).unwrap(), f);
        // w² − cz − dw − 2d² is z·f.
        let third = r3.compose(&[("w", w_val)]).unwrap();
        assert_eq!(third, &z * &f);
    }

    #[test]
    fn degenerate_data_flagged() {
        let spec = CoverSpec::parse(PresetTag::Mi, "general", &[], false).unwrap();
        let [a, b, c, d] = spec.general_data().unwrap();
        let eq = build_general_equations(&a, &b, &c, &d).unwrap();
        assert!(eq.degenerate);
        assert_eq!(eq.relations[0].to_string(), "z^2");
        assert!(matches!(cubic_on(&spec, Chart::V0), Err(CoverError::BNotUnit(_))));
        let flat = CoverSpec::parse(PresetTag::Mi, "cubic_3dc", &[], false).unwrap();
        assert!(matches!(reduce_to_cubic(&flat), Err(CoverError::Degenerate)));
        assert!(matches!(branch_discriminant(&flat), Err(CoverError::Degenerate)));
    }

    #[test]
    fn galois_pure_cubic() {
        let spec = CoverSpec::parse(PresetTag::Mi, "general", &[("b", "1"), ("c", "u^4-u^3+t^3+t^12")], true).unwrap();
        let cubic = cubic_on(&spec, Chart::V0).unwrap();
        assert!(cubic.r.is_zero());
        assert_eq!(cubic.s.to_string(), "-t^12-u^4-t^3+u^3");
        assert!(CoverSpec::parse(PresetTag::Mi, "general", &[("a", "u"), ("b", "1")], true).is_err());
    }

    #[test]
    fn weight_checks() {
        assert!(matches!(
            CoverSpec::parse(PresetTag::Mi, "cubic_3dc", &[("d", "u^3")], false),
            Err(CoverError::InvalidSection { .. })
        ));
        assert!(matches!(
            CoverSpec::parse(PresetTag::Mi, "cubic_rs", &[], false),
            Err(CoverError::FormUnavailable { .. })
        ));
        let a = Section::parse(Chart::V0, "u", DivisorClass::new(2, 4)).unwrap();
        let b = Section::parse(Chart::V0, "1", DivisorClass::new(1, 3)).unwrap();
        let c = Section::parse(Chart::V0, "1", DivisorClass::new(4, 12)).unwrap();
        let d = Section::parse(Chart::V0, "1", DivisorClass::new(3, 8)).unwrap();
        assert!(matches!(build_general_equations(&a, &b, &c, &d), Err(CoverError::WeightMismatch { .. })));
    }

    #[test]
    fn discriminant_normalisations() {
        let spec = m2();
        let cubic = cubic_on(&spec, Chart::V0).unwrap();
        let [_, _, c, d] = spec.general_data().unwrap();
        let d3 = &(d.poly() * d.poly()) * d.poly();
        let expect = &d3.scale(&rat(4)) + &(c.poly() * c.poly());
        assert_eq!(branch_discriminant(&spec).unwrap(), expect);
        let f = cubic.polynomial();
        let res = resultant_in(&f, &f.differentiate("z").unwrap(), "z").unwrap();
        let vars = res.vars().to_vec();
        assert_eq!(res, expect.align_to(&vars).unwrap().scale(&rat(27)));
    }
}
