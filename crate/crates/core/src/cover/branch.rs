//! Plane-curve singularities of the branch curve and total ramification.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{binary_form_squarefree, lowest_form, verify_multiplicity, MultiPoly, PlanePoint, PolyError, Rational};

use super::{cubic_on, CoverError, CoverSpec};
use crate::f3::Chart;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SingularityType {
    Smooth,
    OrdinaryMultiple { m: u32 },
    TripleTriple,
    Other { description: String },
}

impl std::fmt::Display for SingularityType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularityType::Smooth => write!(f, "smooth"),
            SingularityType::OrdinaryMultiple { m } => write!(f, "ordinary {}-fold point", m),
            SingularityType::TripleTriple => write!(f, "(3,3)-point"),
            SingularityType::Other { description } => write!(f, "other: {}", description),
        }
    }
}

/// The verdict together with the local data it rests on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchAnalysis {
    pub kind: SingularityType,
    pub multiplicity: u32,
    /// Lowest form at the point, in coordinates centred there.
    pub tangent_cone: Option<MultiPoly>,
    /// For a cubed tangent line: the strict transform after one blowup, in
    /// the chart containing the tangent direction.
    pub strict_transform: Option<MultiPoly>,
}

/// Writes a binary cubic as `κ·ℓ³` with `ℓ` monic in the first variable
/// (or `ℓ` = second variable), when possible over Q.
fn cube_root_line(form: &MultiPoly) -> Option<(Rational, Rational)> {
    let c = |i: u32| form.coefficient(&[i, 3 - i]);
    let (c3, c2) = (c(3), c(2));
    if c3.is_zero() {
        // Must be κ·y³.
        if c2.is_zero() && c(1).is_zero() {
            return Some((Rational::zero(), Rational::one()));
        }
        return None;
    }
    // ℓ = x + βy, κ = c3.
    let beta = &c2 / (&c3 * Rational::from_integer(3.into()));
    let expect = [
        c3.clone(),
        &c3 * &beta * Rational::from_integer(3.into()),
        &c3 * &beta * &beta * Rational::from_integer(3.into()),
        &c3 * &beta * &beta * &beta,
    ];
    let actual = [c(3), c(2), c(1), c(0)];
    if expect == actual {
        Some((Rational::one(), beta))
    } else {
        None
    }
}

/// Moves `pt` to the origin, rotates so that the tangent line `αx + βy` is
/// `X = 0`, then blows up in the chart `X = Y·X'` and divides by `Y³`.
fn strict_transform(centred: &MultiPoly, line: (Rational, Rational)) -> Result<MultiPoly, PolyError> {
    let vars = centred.vars().to_vec();
    let (x, y) = (vars[0].as_str(), vars[1].as_str());
    let vx = MultiPoly::var_owned(vars.clone(), x)?;
    let vy = MultiPoly::var_owned(vars.clone(), y)?;
    let (alpha, beta) = line;
    // New coordinates: first variable carries X = ℓ, second carries Y.
    let rotated = if alpha.is_zero() {
        // ℓ = y: X = y, Y = x.
        centred.compose(&[(x, vy.clone()), (y, vx.clone())])?
    } else {
        // ℓ = x + βy: x = X − βY, y = Y.
        centred.compose(&[(x, &vx - &vy.scale(&beta))])?
    };
    // X = Y·X'.
    let blown = rotated.compose(&[(x, &vx * &vy)])?;
    Ok(blown.div_monomial(&[0, 3]).expect("cube of the exceptional divisor divides"))
}

/// Classifies the point `pt` of the plane curve `dpoly = 0`.
pub fn classify_branch_point(dpoly: &MultiPoly, pt: &PlanePoint) -> Result<SingularityType, PolyError> {
    Ok(analyse_branch_point(dpoly, pt)?.kind)
}

pub(crate) fn analyse_branch_point(dpoly: &MultiPoly, pt: &PlanePoint) -> Result<BranchAnalysis, PolyError> {
    if dpoly.vars().len() != 2 {
        return Err(PolyError::WrongArity { expected: 2, found: dpoly.vars().len() });
    }
    let cone = lowest_form(dpoly, pt)?;
    let m = cone.total_degree().unwrap();
    let mut out = BranchAnalysis { kind: SingularityType::Smooth, multiplicity: m, tangent_cone: Some(cone.clone()), strict_transform: None };
    if m <= 1 {
        return Ok(out);
    }
    if binary_form_squarefree(&cone)? {
        out.kind = SingularityType::OrdinaryMultiple { m };
    } else if m == 3 {
        match cube_root_line(&cone) {
            Some(line) => {
                let centred = dpoly.translate(pt)?;
                let st = strict_transform(&centred, line)?;
                let origin: PlanePoint = st.vars().iter().map(|v| (v.clone(), Rational::zero())).collect();
                let (m2, ordinary) = if st.evaluate(&origin)?.is_zero() {
                    let c2 = lowest_form(&st, &origin)?;
                    let m2 = c2.total_degree().unwrap();
                    (m2, binary_form_squarefree(&c2)?)
                } else {
                    (0, false)
                };
                out.kind = if m2 == 3 && ordinary {
                    SingularityType::TripleTriple
                } else {
                    SingularityType::Other {
                        description: format!(
                            "triple point with cubed tangent line; strict transform has multiplicity {} on the exceptional line{}",
                            m2,
                            if m2 == 3 { ", tangent cone not squarefree" } else { "" }
                        ),
                    }
                };
                out.strict_transform = Some(st);
            }
            None => {
                out.kind = SingularityType::Other { description: "triple point with a double tangent line".into() }
            }
        }
    } else {
        out.kind = SingularityType::Other {
            description: format!("non-ordinary point of multiplicity {}", m),
        };
    }
    // Every singular verdict re-validates the multiplicity from partials.
    if !verify_multiplicity(dpoly, pt, m)? {
        out.kind = SingularityType::Other { description: format!("multiplicity {} failed the partial-derivative check", m) };
    }
    Ok(out)
}

/// True iff `r` and `s` of the V0 cubic both vanish at the base point `pt`.
pub fn is_totally_ramified_at(spec: &CoverSpec, pt: &PlanePoint) -> Result<bool, CoverError> {
    let cubic = cubic_on(spec, Chart::V0)?;
    let base: PlanePoint = pt.iter().filter(|(k, _)| *k == "t" || *k == "u").map(|(k, v)| (k.clone(), v.clone())).collect();
    Ok(cubic.r.evaluate(&base)?.is_zero() && cubic.s.evaluate(&base)?.is_zero())
}
