//! The Hirzebruch surface F₃: divisor classes aσ∞ + bR, h⁰ of line bundles,
//! monomial section bases, and sections on the four standard affine charts.
//!
//! `V0 = (t, u)` and `V1 = (s, v)` cover F₃ minus σ∞, glued by `t = 1/s`.
//! `W0 = (t, x)` and `W1 = (s, y)` are the charts along σ∞ with `x = 1/u`,
//! `y = 1/v`. A section of weight (a, b) written on V0 as
//! `Σ c_kj t^k u^j` becomes
//!
//! ```text
//! V1: t^k u^j -> s^(b-k-3j) v^j
//! W0: t^k u^j -> t^k x^(a-j)
//! ```
//!
//! and W1 is obtained from V1 the same way W0 is obtained from V0.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::poly::{MultiPoly, PolyError};

/// The class `a·σ∞ + b·R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const SIGMA_INF: DivisorClass = DivisorClass { a: 1, b: 0 };
    pub const RULING: DivisorClass = DivisorClass { a: 0, b: 1 };
    pub const SIGMA_0: DivisorClass = DivisorClass { a: 1, b: 3 };

    pub const fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }

    /// Intersection pairing with σ∞² = −3, σ∞·R = 1, R² = 0.
    pub fn dot(self, other: DivisorClass) -> i64 {
        -3 * self.a * other.a + self.a * other.b + other.a * self.b
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.a, -self.b)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * d.a, self * d.b)
    }
}

pub fn intersect(d1: DivisorClass, d2: DivisorClass) -> i64 {
    d1.dot(d2)
}

/// K = −2σ∞ − 5R.
pub fn canonical_class() -> DivisorClass {
    DivisorClass::new(-2, -5)
}

/// `h⁰(O(aσ∞ + bR))` via the pushforward `⊕_{j ≤ a} O(b − 3j)` on P¹.
pub fn h0(d: DivisorClass) -> u64 {
    if d.a < 0 || d.b < 0 {
        return 0;
    }
    (0..=d.a.min(d.b / 3)).map(|j| (d.b - 3 * j + 1) as u64).sum()
}

/// Exponent pairs `(k, j)` of the monomials `t^k u^j` spanning the sections
/// of `d` on V0, in canonical (graded, t before u) descending order.
pub fn section_basis(d: DivisorClass) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    if d.a < 0 || d.b < 0 {
        return out;
    }
    for j in 0..=d.a.min(d.b / 3) {
        for k in 0..=(d.b - 3 * j) {
            out.push((k as u32, j as u32));
        }
    }
    out.sort_by(|x, y| (y.0 + y.1).cmp(&(x.0 + x.1)).then(y.0.cmp(&x.0)));
    out
}

/// `t^k u^j` lies in the V0 basis of `d`.
fn in_basis(d: DivisorClass, k: u32, j: u32) -> bool {
    d.a >= 0 && (j as i64) <= d.a && (k as i64) + 3 * (j as i64) <= d.b
}

/// True iff `f` (over `t`, `u`) only uses monomials of `section_basis(d)`.
pub fn validate_section(f: &MultiPoly, d: DivisorClass) -> bool {
    Section::new(Chart::V0, f.clone(), d).is_ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chart {
    V0,
    V1,
    W0,
    W1,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::V0, Chart::V1, Chart::W0, Chart::W1];

    /// Base coordinate first, fibre coordinate second.
    pub fn vars(self) -> [&'static str; 2] {
        match self {
            Chart::V0 => ["t", "u"],
            Chart::V1 => ["s", "v"],
            Chart::W0 => ["t", "x"],
            Chart::W1 => ["s", "y"],
        }
    }

    pub fn is_sigma_chart(self) -> bool {
        matches!(self, Chart::W0 | Chart::W1)
    }

    /// The chart away from σ∞ sharing this chart's base coordinate.
    fn base(self) -> Chart {
        match self {
            Chart::V0 | Chart::W0 => Chart::V0,
            Chart::V1 | Chart::W1 => Chart::V1,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl std::str::FromStr for Chart {
    type Err = F3Error;
    fn from_str(s: &str) -> Result<Self, F3Error> {
        match s {
            "V0" => Ok(Chart::V0),
            "V1" => Ok(Chart::V1),
            "W0" => Ok(Chart::W0),
            "W1" => Ok(Chart::W1),
            _ => Err(F3Error::UnknownChart(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum F3Error {
    #[error("weight {0} has negative σ∞-coefficient; it has no sections")]
    NegativeWeight(DivisorClass),
    #[error("monomial {monomial} is not a section of {weight} on chart {chart}")]
    OutsideBasis { monomial: String, weight: DivisorClass, chart: Chart },
    #[error("unknown chart `{0}`")]
    UnknownChart(String),
    #[error("sections live on different charts ({0} and {1})")]
    ChartMismatch(Chart, Chart),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Maps a V-chart exponent pair to its W-chart counterpart; an involution.
fn flip_fibre(d: DivisorClass, (k, i): (u32, u32)) -> (u32, u32) {
    (k, d.a as u32 - i)
}

/// V0 <-> V1 exponent map; an involution.
fn flip_base(d: DivisorClass, (k, j): (u32, u32)) -> (u32, u32) {
    ((d.b - k as i64 - 3 * j as i64) as u32, j)
}

/// A polynomial on one chart carrying its bundle weight. The constructor
/// enforces the basis constraint of that chart, which makes every chart
/// change below a bijection of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Section {
    chart: Chart,
    poly: MultiPoly,
    weight: DivisorClass,
}

impl Section {
    pub fn new(chart: Chart, poly: MultiPoly, weight: DivisorClass) -> Result<Self, F3Error> {
        if weight.a < 0 {
            return Err(F3Error::NegativeWeight(weight));
        }
        let poly = poly.align_to_strs(&chart.vars())?;
        for (e, _) in poly.terms() {
            let (k, j) = (e[0], e[1]);
            let ok = match chart {
                Chart::V0 | Chart::V1 => in_basis(weight, k, j),
                Chart::W0 | Chart::W1 => {
                    (j as i64) <= weight.a && in_basis(weight, k, (weight.a - j as i64) as u32)
                }
            };
            if !ok {
                let m = MultiPoly::from_terms(poly.vars().to_vec(), [(e.clone(), crate::poly::rat(1))]);
                return Err(F3Error::OutsideBasis { monomial: m.to_string(), weight, chart });
            }
        }
        Ok(Section { chart, poly, weight })
    }

    pub fn parse(chart: Chart, text: &str, weight: DivisorClass) -> Result<Self, F3Error> {
        let p = MultiPoly::parse(text, &chart.vars())?;
        Section::new(chart, p, weight)
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn weight(&self) -> DivisorClass {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn remap(&self, target: Chart, f: impl Fn((u32, u32)) -> (u32, u32)) -> Section {
        let vars: Vec<String> = target.vars().iter().map(|s| s.to_string()).collect();
        let terms = self.poly.terms().map(|(e, c)| {
            let (k, j) = f((e[0], e[1]));
            (vec![k, j], c.clone())
        });
        Section { chart: target, poly: MultiPoly::from_terms(vars, terms), weight: self.weight }
    }

    /// Rewrites the section on another chart.
    pub fn to_chart(&self, target: Chart) -> Section {
        if target == self.chart {
            return self.clone();
        }
        let d = self.weight;
        let mut cur = self.clone();
        if cur.chart.is_sigma_chart() {
            cur = cur.remap(cur.chart.base(), |e| flip_fibre(d, e));
        }
        if cur.chart != target.base() {
            cur = cur.remap(target.base(), |e| flip_base(d, e));
        }
        if target.is_sigma_chart() {
            cur = cur.remap(target, |e| flip_fibre(d, e));
        }
        cur
    }

    /// Product of sections on the same chart; weights add.
    pub fn mul(&self, other: &Section) -> Result<Section, F3Error> {
        if self.chart != other.chart {
            return Err(F3Error::ChartMismatch(self.chart, other.chart));
        }
        Ok(Section { chart: self.chart, poly: &self.poly * &other.poly, weight: self.weight + other.weight })
    }

    /// Sum of sections of equal weight on the same chart.
    pub fn add(&self, other: &Section) -> Result<Section, F3Error> {
        if self.chart != other.chart {
            return Err(F3Error::ChartMismatch(self.chart, other.chart));
        }
        if self.weight != other.weight {
            return Err(F3Error::OutsideBasis {
                monomial: other.poly.to_string(),
                weight: self.weight,
                chart: self.chart,
            });
        }
        Ok(Section { chart: self.chart, poly: &self.poly + &other.poly, weight: self.weight })
    }

    pub fn scale(&self, c: &crate::poly::Rational) -> Section {
        Section { chart: self.chart, poly: self.poly.scale(c), weight: self.weight }
    }
}

/// The V0 section `f` of weight `d` written on V1: `s^b · f(1/s, v·s⁻³)`.
pub fn transition(f: &Section) -> Result<Section, F3Error> {
    if f.chart != Chart::V0 {
        return Err(F3Error::ChartMismatch(Chart::V0, f.chart));
    }
    Ok(f.to_chart(Chart::V1))
}

/// Inverse of [`transition`].
pub fn transition_inverse(g: &Section) -> Result<Section, F3Error> {
    if g.chart != Chart::V1 {
        return Err(F3Error::ChartMismatch(Chart::V1, g.chart));
    }
    Ok(g.to_chart(Chart::V0))
}
