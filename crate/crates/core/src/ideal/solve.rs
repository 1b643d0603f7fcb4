//! Rational points of a zero-dimensional ideal by triangular
//! back-substitution over its lex basis.

use std::fmt;

use num_traits::Zero;

use crate::poly::univariate::{uni_rational_roots, UniPoly};
use crate::poly::{PlanePoint, Rational};

use super::{groebner, GroebnerBasis, Ideal, SolverConfig, SolverError};

/// A univariate factor without rational roots left over while extending a
/// partial solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub variable: String,
    pub degree: usize,
    pub partial: PlanePoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub vars: Vec<String>,
    pub points: Vec<PlanePoint>,
    /// False when some complex solution has a non-rational coordinate.
    pub complete_over_c: bool,
    pub residual: Vec<Residual>,
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in self.vars.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}={}", v, p[v])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn rational_solutions(ideal: &Ideal, config: &SolverConfig) -> Result<SolutionSet, SolverError> {
    let gb = groebner(ideal, config)?;
    rational_solutions_with(ideal, &gb)
}

/// Uses an already computed basis of `ideal`.
pub fn rational_solutions_with(ideal: &Ideal, gb: &GroebnerBasis) -> Result<SolutionSet, SolverError> {
    let vars = gb.vars().to_vec();
    if gb.is_trivial() {
        return Ok(SolutionSet { vars, points: vec![], complete_over_c: true, residual: vec![] });
    }
    if let Some(v) = gb.missing_pure_power() {
        return Err(SolverError::NotZeroDimensional(v.to_string()));
    }
    let leads = gb.leading_monomials();
    let mut partials = vec![PlanePoint::new()];
    let mut residual = Vec::new();
    for i in (0..vars.len()).rev() {
        let layer: Vec<_> = gb
            .polys()
            .iter()
            .zip(&leads)
            .filter(|(_, m)| m.iter().position(|&e| e > 0) == Some(i))
            .map(|(p, _)| p)
            .collect();
        let mut next = Vec::new();
        for partial in &partials {
            let mut g = UniPoly::from_coefficients(vec![]);
            for p in &layer {
                let q = p.substitute(partial);
                let (_, u) = UniPoly::from_multipoly(&q)?;
                g = g.gcd(&u);
            }
            if g.is_zero() {
                return Err(SolverError::NotZeroDimensional(vars[i].clone()));
            }
            if g.degree() == Some(0) {
                continue;
            }
            let roots = uni_rational_roots(&g)?;
            if roots.cofactor_degree > 0 {
                residual.push(Residual {
                    variable: vars[i].clone(),
                    degree: roots.cofactor_degree,
                    partial: partial.clone(),
                });
            }
            for (r, _) in roots.roots {
                let mut ext = partial.clone();
                ext.insert(vars[i].clone(), r);
                next.push(ext);
            }
        }
        partials = next;
    }
    for pt in &partials {
        for g in ideal.generators() {
            if !g.evaluate(pt)?.is_zero() {
                return Err(SolverError::Verification(format!("generator {} is nonzero at a computed point", g)));
            }
        }
    }
    let key = |p: &PlanePoint| -> Vec<Rational> { vars.iter().map(|v| p[v].clone()).collect() };
    partials.sort_by_key(key);
    Ok(SolutionSet { complete_over_c: residual.is_empty(), vars, points: partials, residual })
}
