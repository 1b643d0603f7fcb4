//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`MultiPoly`] carries its own ordered variable list; exponent vectors are
//! indexed by position in that list. Arithmetic between polynomials over
//! different variable lists aligns them by name first.
//!
//! The canonical text form is graded-lexicographic with the variables ranked
//! in declaration order, e.g. `z^3+36*u^3*z-45*u^2*z-3`.

mod local;
mod parse;
mod resultant;
pub(crate) mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use local::{binary_form_squarefree, lowest_form, multiplicity_at, verify_multiplicity};
pub use parse::{parse_poly, ParseLimits};
pub use resultant::resultant_in;
pub use univariate::{univariate_rational_roots, RationalRoots, UniPoly};

/// Exact rational number; always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Exponent vector, one entry per declared variable.
pub type Exponents = Vec<u32>;

/// A point given by exact coordinates for named variables.
pub type PlanePoint = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared variable `{name}` at position {pos}")]
    UndeclaredVariable { name: String, pos: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("no value bound for variable `{0}`")]
    MissingBinding(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected {expected} variable(s), found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("both polynomials are constant in `{0}`")]
    ConstantInVariable(String),
    #[error("variable `{0}` cannot be dropped: it occurs with positive degree")]
    CannotDropVariable(String),
    #[error("could not factor integer {0} to enumerate rational root candidates")]
    Factorization(String),
}

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n/d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for a [`PlanePoint`].
pub fn point(coords: &[(&str, i64)]) -> PlanePoint {
    coords.iter().map(|(v, c)| (v.to_string(), rat(*c))).collect()
}

pub(crate) fn owned_vars(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|v| v.to_string()).collect()
}

fn add_exponents(a: &[u32], b: &[u32]) -> Exponents {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow: degree exceeds u32"))
        .collect()
}

/// Graded-lex comparison; the first declared variable ranks highest.
pub(crate) fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_owned(owned_vars(vars))
    }

    pub(crate) fn zero_owned(vars: Vec<String>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        Self::constant_owned(owned_vars(vars), c)
    }

    pub(crate) fn constant_owned(vars: Vec<String>, c: Rational) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(vec![0; n], c)])
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[&str], name: &str) -> Result<Self, PolyError> {
        Self::var_owned(owned_vars(vars), name)
    }

    pub(crate) fn var_owned(vars: Vec<String>, name: &str) -> Result<Self, PolyError> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Ok(Self::from_terms(vars, [(e, Rational::one())]))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut map: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity does not match variable list");
            if c.is_zero() {
                continue;
            }
            let slot = map.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        MultiPoly { vars, terms: map }
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, PolyError> {
        parse_poly(text, vars)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn require_var(&self, name: &str) -> Result<usize, PolyError> {
        self.var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> + '_ {
        self.terms.iter()
    }

    /// Terms sorted by the canonical (graded-lex, descending) order.
    pub fn canonical_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Minimal total degree over all terms; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, var: &str) -> Result<u32, PolyError> {
        let i = self.require_var(var)?;
        Ok(self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
    }

    /// Variables that actually occur with positive degree.
    pub fn support_vars(&self) -> Vec<&str> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .map(|i| self.vars[i].as_str())
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Sum of the terms of total degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the polynomial over `vars`. Variables missing from
    /// `self` are added with exponent zero; dropping a variable is allowed
    /// only when it does not occur.
    pub fn align_to(&self, vars: &[String]) -> Result<MultiPoly, PolyError> {
        if self.vars == vars {
            return Ok(self.clone());
        }
        for (i, v) in self.vars.iter().enumerate() {
            if !vars.contains(v) && self.terms.keys().any(|e| e[i] > 0) {
                return Err(PolyError::CannotDropVariable(v.clone()));
            }
        }
        let map: Vec<Option<usize>> = vars.iter().map(|v| self.var_index(v)).collect();
        let terms = self.terms.iter().map(|(e, c)| {
            let ne = map.iter().map(|m| m.map_or(0, |i| e[i])).collect();
            (ne, c.clone())
        });
        Ok(MultiPoly::from_terms(vars.to_vec(), terms))
    }

    pub fn align_to_strs(&self, vars: &[&str]) -> Result<MultiPoly, PolyError> {
        self.align_to(&owned_vars(vars))
    }

    fn aligned_with(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (
            self.align_to(&vars).expect("superset alignment"),
            other.align_to(&vars).expect("superset alignment"),
        )
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero_owned(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    fn add_impl(&self, other: &MultiPoly, sign: bool) -> MultiPoly {
        if self.vars != other.vars {
            let (a, b) = self.aligned_with(other);
            return a.add_impl(&b, sign);
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert_with(Rational::zero);
            if sign {
                *slot += c;
            } else {
                *slot -= c;
            }
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        if self.vars != other.vars {
            let (a, b) = self.aligned_with(other);
            return a.mul_impl(&b);
        }
        let mut terms: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = add_exponents(ea, eb);
                let slot = terms.entry(e).or_insert_with(Rational::zero);
                *slot += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// `self^k`; negative exponents are rejected.
    pub fn pow(&self, k: i64) -> Result<MultiPoly, PolyError> {
        if k < 0 {
            return Err(PolyError::NegativeExponent(k));
        }
        Ok(self.pow_u(k as u64))
    }

    pub(crate) fn pow_u(&self, mut k: u64) -> MultiPoly {
        let mut result = MultiPoly::constant_owned(self.vars.clone(), Rational::one());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative.
    pub fn differentiate(&self, var: &str) -> Result<MultiPoly, PolyError> {
        let i = self.require_var(var)?;
        let terms = self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut ne = e.clone();
            ne[i] -= 1;
            (ne, c * Rational::from_integer(BigInt::from(e[i])))
        });
        Ok(MultiPoly::from_terms(self.vars.clone(), terms))
    }

    /// Exact value at a point binding every declared variable.
    pub fn evaluate(&self, pt: &PlanePoint) -> Result<Rational, PolyError> {
        let vals: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| pt.get(v).ok_or_else(|| PolyError::MissingBinding(v.clone())))
            .collect::<Result<_, _>>()?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in vals.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow::pow((*x).clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes exact values for the bound variables; the variable list is
    /// unchanged and the substituted variables no longer occur.
    pub fn substitute(&self, pt: &PlanePoint) -> MultiPoly {
        let bound: Vec<Option<&Rational>> = self.vars.iter().map(|v| pt.get(v)).collect();
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = e.clone();
            let mut nc = c.clone();
            for (i, b) in bound.iter().enumerate() {
                if let Some(x) = b {
                    if ne[i] > 0 {
                        nc *= num_traits::pow::pow((*x).clone(), ne[i] as usize);
                        ne[i] = 0;
                    }
                }
            }
            (ne, nc)
        });
        MultiPoly::from_terms(self.vars.clone(), terms)
    }

    /// Simultaneously replaces variables by polynomials over the same
    /// variable list.
    pub fn compose(&self, subs: &[(&str, MultiPoly)]) -> Result<MultiPoly, PolyError> {
        let mut images: Vec<Option<MultiPoly>> = vec![None; self.vars.len()];
        for (v, p) in subs {
            let i = self.require_var(v)?;
            images[i] = Some(p.align_to(&self.vars)?);
        }
        let mut power_cache: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.vars.len()];
        let one = MultiPoly::constant_owned(self.vars.clone(), Rational::one());
        let mut result = MultiPoly::zero_owned(self.vars.clone());
        for (e, c) in &self.terms {
            let mut keep = vec![0u32; e.len()];
            let mut factor = one.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match &images[i] {
                    None => keep[i] = k,
                    Some(img) => {
                        let cache = &mut power_cache[i];
                        if cache.is_empty() {
                            cache.push(one.clone());
                        }
                        while cache.len() <= k as usize {
                            let next = cache.last().unwrap() * img;
                            cache.push(next);
                        }
                        factor = &factor * &cache[k as usize];
                    }
                }
            }
            let mono = MultiPoly::from_terms(self.vars.clone(), [(keep, c.clone())]);
            result = &result + &(&factor * &mono);
        }
        Ok(result)
    }

    /// Translation `x ↦ x + a` for every coordinate bound in `pt`, so that the
    /// point `pt` moves to the origin.
    pub fn translate(&self, pt: &PlanePoint) -> Result<MultiPoly, PolyError> {
        let mut subs = Vec::new();
        for (v, a) in pt {
            if self.var_index(v).is_none() {
                continue;
            }
            if a.is_zero() {
                continue;
            }
            let shifted = &MultiPoly::var_owned(self.vars.clone(), v)?
                + &MultiPoly::constant_owned(self.vars.clone(), a.clone());
            subs.push((v.as_str(), shifted));
        }
        if subs.is_empty() {
            return Ok(self.clone());
        }
        self.compose(&subs)
    }

    /// Multiplies by the monomial with exponent vector `e`.
    pub fn mul_monomial(&self, e: &[u32]) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(x, c)| (add_exponents(x, e), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, e: &[u32]) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (x, c) in &self.terms {
            let mut ne = Vec::with_capacity(x.len());
            for (a, b) in x.iter().zip(e) {
                ne.push(a.checked_sub(*b)?);
            }
            terms.insert(ne, c.clone());
        }
        Some(MultiPoly { vars: self.vars.clone(), terms })
    }

    /// Exact multivariate division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (num, den) = self.aligned_with(divisor);
        let (lead_e, lead_c) = den.terms.iter().next_back()?;
        let mut rem = num;
        let mut quot = MultiPoly::zero_owned(rem.vars.clone());
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let mut qe = Vec::with_capacity(e.len());
            for (a, b) in e.iter().zip(lead_e) {
                qe.push(a.checked_sub(*b)?);
            }
            let qc = c / lead_c;
            let qt = MultiPoly::from_terms(rem.vars.clone(), [(qe, qc)]);
            rem = &rem - &(&qt * &den);
            quot = &quot + &qt;
        }
        Some(quot)
    }

    /// Coefficients with respect to `var`, lowest degree first; each is a
    /// polynomial over the same variable list not involving `var`.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<MultiPoly>, PolyError> {
        let i = self.require_var(var)?;
        let deg = self.degree_in(var)? as usize;
        let mut buckets: Vec<BTreeMap<Exponents, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[i] as usize;
            ne[i] = 0;
            buckets[k].insert(ne, c.clone());
        }
        Ok(buckets
            .into_iter()
            .map(|terms| MultiPoly { vars: self.vars.clone(), terms })
            .collect())
    }

    /// Multiplies by the least common multiple of the coefficient
    /// denominators and divides by the content, making the coefficients
    /// coprime integers with a positive leading (lex-greatest) coefficient.
    pub fn primitive(&self) -> MultiPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            g = g.gcd(&n);
        }
        let lead_neg = self.terms.values().next_back().is_some_and(|c| c.is_negative());
        let mut factor = Rational::new(lcm, g);
        if lead_neg {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let mag = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                let f: fn(&MultiPoly, &MultiPoly) -> MultiPoly = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, true));
binop!(Sub, sub, |a, b| a.add_impl(b, false));
binop!(Mul, mul, |a, b| a.mul_impl(b));

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
