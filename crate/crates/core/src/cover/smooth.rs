//! Jacobian ideals of the cover on each chart of F₃.
//!
//! Where `b` is a unit the cover is the hypersurface `z³ + rz + s = 0` and
//! its singular locus is cut out by `f` and its partials. Elsewhere the
//! cover is the codimension-2 subscheme of `(z, w, base, fibre)`-space given
//! by the three relations, and it is singular exactly where the 3×4 Jacobian
//! drops below rank 2, i.e. where all eighteen 2×2 minors vanish.

use num_traits::Zero;

use crate::f3::Chart;
use crate::ideal::{groebner, rational_solutions_with, GroebnerBasis, Ideal, SolutionSet, SolverConfig};
use crate::poly::{MultiPoly, PlanePoint, Rational};

use super::{cubic_on, general_equations_on, CoverError, CoverForm, CoverSpec, PresetTag};


#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SmoothnessRoute {
    Cubic,
    Determinantal,
}

/// The part of a chart an ideal describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    Whole,
    /// Boundary coordinate set to zero: `s` on V1, `x` on W0, `y` on W1.
    Boundary(&'static str),
    /// Where `b ≠ 0`, through an extra variable `bi` with `b·bi = 1`.
    BNonzero,
    /// On `b = 0`, with the fibre coordinate replaced by the given
    /// polynomial in the base coordinate.
    BZero(MultiPoly),
}

/// Generators whose common zeros are the singular points of the cover over
/// one region of a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartModel {
    pub chart: Chart,
    pub route: SmoothnessRoute,
    pub region: Region,
    pub ideal: Ideal,
}

impl ChartModel {
    pub fn boundary(&self) -> Option<&'static str> {
        match self.region {
            Region::Boundary(v) => Some(v),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.region {
            Region::Whole => format!("{}", self.chart),
            Region::Boundary(v) => format!("{} at {}=0", self.chart, v),
            Region::BNonzero => format!("{} off b=0", self.chart),
            Region::BZero(_) => format!("{} on b=0", self.chart),
        }
    }
}

fn boundary_var(chart: Chart) -> Option<&'static str> {
    match chart {
        Chart::V0 => None,
        Chart::V1 => Some("s"),
        Chart::W0 => Some("x"),
        Chart::W1 => Some("y"),
    }
}

fn push_new(gens: &mut Vec<MultiPoly>, p: MultiPoly) {
    if !p.is_zero() && !gens.contains(&p) {
        gens.push(p);
    }
}

fn jacobian_ideal_gens(f: &MultiPoly, base: &str, fibre: &str) -> Result<Vec<MultiPoly>, CoverError> {
    let mut gens = vec![f.clone()];
    for v in ["z", base, fibre] {
        push_new(&mut gens, f.differentiate(v)?);
    }
    Ok(gens)
}

/// Relations and all 2×2 minors of their Jacobian in `(z, w, base, fibre)`.
fn determinantal_gens(spec: &CoverSpec, chart: Chart) -> Result<(Vec<String>, Vec<MultiPoly>), CoverError> {
    let [base, fibre] = chart.vars();
    let [a, b, c, d] = spec.general_data().expect("only structure data can have non-unit b");
    let eq = general_equations_on(&a, &b, &c, &d, chart);
    let cols = ["z", "w", base, fibre];
    let jac: Vec<Vec<MultiPoly>> = eq
        .relations
        .iter()
        .map(|r| cols.iter().map(|v| r.differentiate(v)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let mut raw: Vec<MultiPoly> = eq.relations.to_vec();
    for (i, k) in [(0, 1), (0, 2), (1, 2)] {
        for p in 0..4 {
            for q in (p + 1)..4 {
                raw.push(&(&jac[i][p] * &jac[k][q]) - &(&jac[i][q] * &jac[k][p]));
            }
        }
    }
    Ok((eq.vars, raw))
}

fn finish(raw: Vec<MultiPoly>, order: &[&str]) -> Result<Ideal, CoverError> {
    let owned: Vec<String> = order.iter().map(|s| s.to_string()).collect();
    let mut gens = Vec::new();
    for g in raw {
        push_new(&mut gens, g.align_to(&owned)?);
    }
    Ok(Ideal::new(gens, order)?)
}

/// The singular-locus ideal on `chart`, restricted to the chart's boundary
/// curve when `on_boundary` is set (no effect on V0).
pub fn chart_model(spec: &CoverSpec, chart: Chart, on_boundary: bool) -> Result<ChartModel, CoverError> {
    let [base, fibre] = chart.vars();
    let boundary = if on_boundary { boundary_var(chart) } else { None };
    let region = boundary.map_or(Region::Whole, Region::Boundary);
    match cubic_on(spec, chart) {
        Ok(cubic) => {
            let f = cubic.polynomial();
            let mut gens = jacobian_ideal_gens(&f, base, fibre)?;
            if let Some(b) = boundary {
                gens.push(MultiPoly::var_owned(f.vars().to_vec(), b)?);
            }
            let ideal = Ideal::new(gens, &["z", fibre, base])?;
            Ok(ChartModel { chart, route: SmoothnessRoute::Cubic, region, ideal })
        }
        Err(CoverError::BNotUnit(_)) => {
            let (_, mut raw) = determinantal_gens(spec, chart)?;
            let mut order = vec!["z", "w", fibre, base];
            if let Some(bv) = boundary {
                let zero: PlanePoint = [(bv.to_string(), Rational::zero())].into_iter().collect();
                raw = raw.iter().map(|g| g.substitute(&zero)).collect();
                order.retain(|v| *v != bv);
            }
            let ideal = finish(raw, &order)?;
            Ok(ChartModel { chart, route: SmoothnessRoute::Determinantal, region, ideal })
        }
        Err(e) => Err(e),
    }
}

/// `b = λ·fibre + β(base)` with `λ` a nonzero constant gives `fibre = −β/λ`.
fn b_zero_curve(spec: &CoverSpec, chart: Chart) -> Option<MultiPoly> {
    let b = spec.general_data()?[1].to_chart(chart).poly().clone();
    if b.degree_in(chart.vars()[1]).ok()? != 1 {
        return None;
    }
    let coeffs = b.coefficients_in(chart.vars()[1]).ok()?;
    let lambda = coeffs[1].as_constant()?;
    Some(coeffs[0].scale(&(-Rational::from_integer(1.into()) / lambda)))
}

/// Ideals whose zeros together are the singular points over the whole
/// chart. Where `b` is not a unit but is linear in the fibre coordinate the
/// chart is split along `b = 0`, which keeps each ideal small.
pub fn locus_models(spec: &CoverSpec, chart: Chart) -> Result<Vec<ChartModel>, CoverError> {
    let whole = || chart_model(spec, chart, false).map(|m| vec![m]);
    if cubic_on(spec, chart).is_ok() {
        return whole();
    }
    let Some(fibre_on_b0) = b_zero_curve(spec, chart) else {
        return whole();
    };
    let [base, fibre] = chart.vars();
    let [a, b, c, d] = spec.general_data().expect("structure data");
    let [a, b, c, d] = [&a, &b, &c, &d].map(|s| s.to_chart(chart).poly().clone());
    // Off b = 0: the cubic model, saturated by b.
    let (r, s_) = super::cubic_from_general(&a, &b, &c, &d);
    let cubic = super::CubicForm { chart, r, s: s_, three_d_c: false };
    let f = cubic.polynomial();
    let vars: Vec<String> = ["bi", "z", fibre, base].iter().map(|s| s.to_string()).collect();
    let mut raw = jacobian_ideal_gens(&f, base, fibre)?;
    let bi = MultiPoly::var_owned(vars.clone(), "bi")?;
    let one = MultiPoly::constant_owned(vars.clone(), Rational::from_integer(1.into()));
    raw.push(&one - &(&bi * &b.align_to(&vars)?));
    let off = ChartModel {
        chart,
        route: SmoothnessRoute::Cubic,
        region: Region::BNonzero,
        ideal: finish(raw.into_iter().map(|g| g.align_to(&vars)).collect::<Result<_, _>>()?, &["bi", "z", fibre, base])?,
    };
    // On b = 0: the determinantal ideal along the curve.
    let (dvars, raw) = determinantal_gens(spec, chart)?;
    let image = fibre_on_b0.align_to(&dvars)?;
    let raw: Vec<MultiPoly> = raw.iter().map(|g| g.compose(&[(fibre, image.clone())])).collect::<Result<_, _>>()?;
    let on = ChartModel {
        chart,
        route: SmoothnessRoute::Determinantal,
        region: Region::BZero(fibre_on_b0),
        ideal: finish(raw, &["z", "w", base])?,
    };
    Ok(vec![off, on])
}

/// The singular points over one chart, piece by piece and combined.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularLocus {
    pub pieces: Vec<(ChartModel, GroebnerBasis, SolutionSet)>,
    /// Points in `(z, fibre, base)`.
    pub solutions: SolutionSet,
}

/// Rational singular points of the cover over `chart`.
pub fn singular_locus(spec: &CoverSpec, chart: Chart, config: &SolverConfig) -> Result<SingularLocus, CoverError> {
    let [base, fibre] = chart.vars();
    let vars: Vec<String> = ["z", fibre, base].iter().map(|s| s.to_string()).collect();
    let mut pieces = Vec::new();
    let mut points: Vec<PlanePoint> = Vec::new();
    let mut residual = Vec::new();
    for model in locus_models(spec, chart)? {
        let gb = groebner(&model.ideal, config)?;
        let sols = rational_solutions_with(&model.ideal, &gb)?;
        for p in &sols.points {
            let mut q: PlanePoint = p.iter().filter(|(k, _)| vars.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
            if let Region::BZero(curve) = &model.region {
                let value = curve.substitute(&q).as_constant().expect("curve depends on the base only");
                q.insert(fibre.to_string(), value);
            }
            points.push(q);
        }
        residual.extend(sols.residual.iter().cloned());
        pieces.push((model, gb, sols));
    }
    let key = |p: &PlanePoint| -> Vec<Rational> { vars.iter().map(|v| p[v].clone()).collect() };
    points.sort_by_key(key);
    points.dedup();
    let solutions = SolutionSet { vars, points, complete_over_c: residual.is_empty(), residual };
    Ok(SingularLocus { pieces, solutions })
}

/// Rational singular points of the cover over V0, in `(z, u, t)`.
pub fn singular_locus_v0(spec: &CoverSpec) -> Result<SolutionSet, CoverError> {
    Ok(singular_locus(spec, Chart::V0, &SolverConfig::default())?.solutions)
}

/// One boundary piece of the at-infinity check.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCheck {
    pub model: ChartModel,
    pub basis: GroebnerBasis,
}

impl BoundaryCheck {
    pub fn smooth(&self) -> bool {
        self.basis.is_trivial()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfinityCheck {
    /// The ruling `s = 0` on V1, then σ∞ on W0 and W1.
    pub pieces: Vec<BoundaryCheck>,
    /// The closed-form criterion along σ∞, where one applies: the constant
    /// leading coefficient of `c` (structure data with unit `b`, preset Mi)
    /// or of `s` (preset N in cubic form) is nonzero.
    pub sigma_fast_path: Option<bool>,
}

impl InfinityCheck {
    pub fn smooth(&self) -> bool {
        self.pieces.iter().all(BoundaryCheck::smooth)
    }

    pub fn ruling_smooth(&self) -> bool {
        self.pieces.iter().filter(|p| p.model.chart == Chart::V1).all(BoundaryCheck::smooth)
    }

    pub fn sigma_smooth(&self) -> bool {
        self.pieces.iter().filter(|p| p.model.chart.is_sigma_chart()).all(BoundaryCheck::smooth)
    }
}

fn sigma_fast_path(spec: &CoverSpec) -> Option<bool> {
    let leading = |p: &MultiPoly, j: u32| p.coefficient(&[0, j]);
    match (spec.preset().tag, spec.form()) {
        (PresetTag::N, CoverForm::CubicRS { s, .. }) => Some(!leading(s.poly(), 5).is_zero()),
        (PresetTag::Mi, CoverForm::General { .. } | CoverForm::Cubic3DC { .. }) => {
            let [_, b, c, _] = spec.general_data()?;
            let unit = b.poly().as_constant().is_some_and(|k| !k.is_zero());
            unit.then(|| !leading(c.poly(), 4).is_zero())
        }
        _ => None,
    }
}

/// Smoothness of the cover over the ruling `s = 0` and over σ∞.
pub fn check_smooth_over_infinity_with(spec: &CoverSpec, config: &SolverConfig) -> Result<InfinityCheck, CoverError> {
    let mut pieces = Vec::new();
    for chart in [Chart::V1, Chart::W0, Chart::W1] {
        let model = chart_model(spec, chart, true)?;
        let basis = groebner(&model.ideal, config)?;
        pieces.push(BoundaryCheck { model, basis });
    }
    Ok(InfinityCheck { pieces, sigma_fast_path: sigma_fast_path(spec) })
}

pub fn check_smooth_over_infinity(spec: &CoverSpec) -> Result<InfinityCheck, CoverError> {
    check_smooth_over_infinity_with(spec, &SolverConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn galois_mi(c: &str) -> CoverSpec {
        CoverSpec::parse(PresetTag::Mi, "general", &[("b", "1"), ("c", c)], true).unwrap()
    }

    #[test]
    fn routes_per_chart() {
        let spec = galois_mi("u^4+t^12+t+1");
        assert_eq!(chart_model(&spec, Chart::V0, false).unwrap().route, SmoothnessRoute::Cubic);
        assert_eq!(chart_model(&spec, Chart::V1, true).unwrap().route, SmoothnessRoute::Cubic);
        let w0 = chart_model(&spec, Chart::W0, true).unwrap();
        assert_eq!(w0.route, SmoothnessRoute::Determinantal);
        assert_eq!(w0.ideal.vars(), ["z", "w", "t"]);
        assert_eq!(w0.boundary(), Some("x"));
        let v1 = chart_model(&spec, Chart::V1, true).unwrap();
        assert_eq!(v1.ideal.vars(), ["z", "v", "s"]);
        assert_eq!(v1.ideal.generators().last().unwrap().to_string(), "s");
    }

    #[test]
    fn smooth_witness_is_smooth_everywhere() {
        let spec = galois_mi("u^4+t^12+t+1");
        assert!(singular_locus_v0(&spec).unwrap().is_empty());
        let inf = check_smooth_over_infinity(&spec).unwrap();
        assert!(inf.smooth());
        assert_eq!(inf.sigma_fast_path, Some(true));
    }

    #[test]
    fn vanishing_on_sigma_is_detected() {
        // c without its u⁴ term: the cover is singular along σ∞.
        let spec = galois_mi("u^3+t^12+t+1");
        let inf = check_smooth_over_infinity(&spec).unwrap();
        assert_eq!(inf.sigma_fast_path, Some(false));
        assert!(!inf.sigma_smooth());
        assert!(inf.ruling_smooth());
    }

    #[test]
    fn singular_ruling_is_detected() {
        // On V1, c = v⁴ + s¹¹ + s¹², singular at s = v = 0.
        let spec = galois_mi("u^4+t+1");
        let inf = check_smooth_over_infinity(&spec).unwrap();
        assert!(!inf.ruling_smooth());
    }

    fn mii(b: &str) -> CoverSpec {
        CoverSpec::parse(
            PresetTag::Mii,
            "general",
            &[("a", "u"), ("b", b), ("c", "u^3+t^9+t+1"), ("d", "u^2+t^7+1")],
            false,
        )
        .unwrap()
    }

    #[test]
    fn non_unit_b_splits_the_chart() {
        let models = locus_models(&mii("u+1"), Chart::V0).unwrap();
        assert_eq!(models.len(), 2);
        assert_eq!(models[0].region, Region::BNonzero);
        assert!(models[0].ideal.vars().iter().any(|v| v == "bi"));
        let Region::BZero(curve) = &models[1].region else { panic!("second piece lies over b = 0") };
        assert_eq!(curve.to_string(), "-1");
        assert_eq!(models[1].route, SmoothnessRoute::Determinantal);
        assert_eq!(models[1].ideal.vars(), ["z", "w", "t"]);
    }

    #[test]
    fn mii_witness_is_smooth() {
        let spec = mii("u+1");
        let locus = singular_locus(&spec, Chart::V0, &SolverConfig::default()).unwrap();
        assert!(locus.solutions.is_empty() && locus.solutions.complete_over_c);
        assert!(check_smooth_over_infinity(&spec).unwrap().smooth());
    }

    #[test]
    fn constant_b_on_mii_is_singular_along_sigma() {
        let inf = check_smooth_over_infinity(&mii("1")).unwrap();
        assert!(!inf.sigma_smooth());
    }
}
