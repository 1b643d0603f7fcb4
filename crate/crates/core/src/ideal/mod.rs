//! Ideals in Q[x_1..x_n], lex Gröbner bases, and exact solving of
//! zero-dimensional systems over Q.

mod buchberger;
mod fglm;
mod solve;

use std::fmt;

use crate::poly::{MultiPoly, PolyError};

use buchberger::{buchberger, satisfies_buchberger_criterion, Order, Outcome, Pol};

pub use buchberger::GroebnerStats;
pub use solve::{rational_solutions, rational_solutions_with, Residual, SolutionSet};

pub const DEFAULT_SPAIR_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("S-pair budget of {budget} exhausted")]
    Resource { budget: usize },
    #[error("ideal is not zero-dimensional: no pure power of `{0}` among the leading monomials")]
    NotZeroDimensional(String),
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("variable priority must list each variable once; `{0}` repeated")]
    DuplicateVariable(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("verification failed: {0}")]
    Verification(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub spair_budget: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { spair_budget: DEFAULT_SPAIR_BUDGET }
    }
}

/// Generators over an explicit variable priority: the first variable is the
/// largest in the lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    vars: Vec<String>,
    generators: Vec<MultiPoly>,
}

impl Ideal {
    /// Every generator must only use variables from `priority`. Zero
    /// generators are dropped.
    pub fn new(generators: Vec<MultiPoly>, priority: &[&str]) -> Result<Self, SolverError> {
        Self::new_owned(generators, priority.iter().map(|s| s.to_string()).collect())
    }

    pub fn new_owned(generators: Vec<MultiPoly>, vars: Vec<String>) -> Result<Self, SolverError> {
        if generators.is_empty() {
            return Err(SolverError::NoGenerators);
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(SolverError::DuplicateVariable(v.clone()));
            }
        }
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.align_to(&vars))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal { vars, generators })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }
}

fn to_pol(p: &MultiPoly, ord: Order) -> Pol {
    Pol::new(p.terms().map(|(e, c)| (e.clone(), c.clone())).collect(), ord)
}

fn from_pol(vars: &[String], p: &Pol) -> MultiPoly {
    MultiPoly::from_terms(vars.to_vec(), p.terms.iter().cloned())
}

/// A reduced lex Gröbner basis, sorted by descending leading monomial, with
/// every element monic.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    vars: Vec<String>,
    polys: Vec<MultiPoly>,
    internal: Vec<Pol>,
    stats: GroebnerStats,
}

/// Computes the reduced lex basis, then checks that every input generator
/// reduces to zero modulo it.
///
/// A grevlex basis is computed first. The unit ideal is recognised there
/// directly, and a zero-dimensional basis is converted to lex by FGLM; only
/// positive-dimensional ideals run Buchberger in lex. The S-pair budget is
/// shared by both runs.
pub fn groebner(ideal: &Ideal, config: &SolverConfig) -> Result<GroebnerBasis, SolverError> {
    let nvars = ideal.vars.len();
    let budget = config.spair_budget;
    let exhausted = SolverError::Resource { budget };
    let input = |ord| ideal.generators.iter().map(|g| to_pol(g, ord)).collect::<Vec<_>>();
    let Outcome::Basis(graded, mut stats) = buchberger(input(Order::Grevlex), budget, Order::Grevlex) else {
        return Err(exhausted);
    };
    let internal = if graded.len() == 1 && graded[0].is_constant() {
        graded
    } else if !graded.is_empty() && fglm::is_zero_dimensional(&graded, nvars) {
        fglm::fglm(&graded, nvars)
    } else {
        let rest = budget - stats.pairs_reduced;
        let Outcome::Basis(b, s) = buchberger(input(Order::Lex), rest, Order::Lex) else {
            return Err(exhausted);
        };
        stats.absorb(s);
        b
    };
    let polys = internal.iter().map(|p| from_pol(&ideal.vars, p)).collect();
    let gb = GroebnerBasis { vars: ideal.vars.clone(), polys, internal, stats };
    for g in &ideal.generators {
        if !gb.normal_form(g)?.is_zero() {
            return Err(SolverError::Verification(format!("generator {} does not reduce to zero", g)));
        }
    }
    Ok(gb)
}

/// True iff the ideal is the unit ideal, i.e. the system has no solution over C.
pub fn is_trivial(ideal: &Ideal, config: &SolverConfig) -> Result<bool, SolverError> {
    Ok(groebner(ideal, config)?.is_trivial())
}

impl GroebnerBasis {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn is_trivial(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].is_constant()
    }

    /// Whether the basis is the zero ideal (all generators were zero).
    pub fn is_zero_ideal(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Vec<u32>> {
        self.internal.iter().map(|p| p.lead().clone()).collect()
    }

    /// Remainder of `p` on full reduction; zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly, SolverError> {
        let p = p.align_to(&self.vars)?;
        let refs: Vec<&Pol> = self.internal.iter().collect();
        Ok(from_pol(&self.vars, &buchberger::reduce(&to_pol(&p, Order::Lex), &refs, Order::Lex)))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool, SolverError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Recomputes every S-polynomial and checks it reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        satisfies_buchberger_criterion(&self.internal, Order::Lex)
    }

    /// First variable lacking a pure-power leading monomial, if any.
    pub fn missing_pure_power(&self) -> Option<&str> {
        if self.is_trivial() {
            return None;
        }
        let leads = self.leading_monomials();
        (0..self.vars.len())
            .find(|&i| !leads.iter().any(|m| m[i] > 0 && m.iter().enumerate().all(|(j, e)| j == i || *e == 0)))
            .map(|i| self.vars[i].as_str())
    }

    pub fn as_ideal(&self) -> Ideal {
        Ideal { vars: self.vars.clone(), generators: self.polys.clone() }
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.polys.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[&str], vars: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|g| MultiPoly::parse(g, vars).unwrap()).collect(), vars).unwrap()
    }

    fn gb(gens: &[&str], vars: &[&str]) -> GroebnerBasis {
        groebner(&ideal(gens, vars), &SolverConfig::default()).unwrap()
    }

    #[test]
    fn linear_point() {
        let b = gb(&["z-1", "u", "t"], &["z", "u", "t"]);
        assert_eq!(b.to_string(), "[z-1,u,t]");
        assert!(!b.is_trivial());
    }

    #[test]
    fn fat_point() {
        let b = gb(&["x^2", "x*y", "y^2"], &["x", "y"]);
        assert_eq!(b.polys().len(), 3);
        assert!(b.satisfies_buchberger_criterion());
        assert_eq!(b.missing_pure_power(), None);
    }

    #[test]
    fn unit_ideal() {
        let b = gb(&["x", "x+1"], &["x"]);
        assert!(b.is_trivial());
        assert_eq!(b.to_string(), "[1]");
    }

    #[test]
    fn idempotent() {
        let b = gb(&["x^2+y^2-1", "x-y^3"], &["x", "y"]);
        let again = groebner(&b.as_ideal(), &SolverConfig::default()).unwrap();
        assert_eq!(b.polys(), again.polys());
        assert!(b.satisfies_buchberger_criterion());
    }

    #[test]
    fn priority_changes_elimination() {
        let b = gb(&["x^2+y^2-1", "x-y"], &["x", "y"]);
        assert_eq!(b.to_string(), "[x-y,y^2-1/2]");
        let c = gb(&["x^2+y^2-1", "x-y"], &["y", "x"]);
        assert_eq!(c.to_string(), "[y-x,x^2-1/2]");
    }

    #[test]
    fn membership() {
        let b = gb(&["x^2-y", "x*y-1"], &["x", "y"]);
        let vars = ["x", "y"];
        assert!(b.contains(&MultiPoly::parse("y^3-1", &vars).unwrap()).unwrap());
        assert!(!b.contains(&MultiPoly::parse("y-1", &vars).unwrap()).unwrap());
    }

    #[test]
    fn budget_reports_resource_error() {
        let i = ideal(&["x^2-y", "x*y-1"], &["x", "y"]);
        assert_eq!(groebner(&i, &SolverConfig { spair_budget: 0 }), Err(SolverError::Resource { budget: 0 }));
    }

    #[test]
    fn undeclared_variable_rejected() {
        let g = MultiPoly::parse("w", &["w"]).unwrap();
        assert!(matches!(Ideal::new(vec![g], &["x"]), Err(SolverError::Poly(PolyError::CannotDropVariable(_)))));
        assert_eq!(Ideal::new(vec![], &["x"]), Err(SolverError::NoGenerators));
    }
}
