//! Dense univariate polynomials over Q: gcd, squarefree test, and exact
//! rational root extraction.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MultiPoly, PolyError, Rational};

/// Coefficients lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn from_coefficients(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    /// Reads a polynomial in which at most one variable occurs.
    pub fn from_multipoly(p: &MultiPoly) -> Result<(Option<String>, Self), PolyError> {
        let support = p.support_vars();
        if support.len() > 1 {
            return Err(PolyError::WrongArity { expected: 1, found: support.len() });
        }
        let Some(var) = support.first().map(|s| s.to_string()) else {
            return Ok((None, UniPoly::from_coefficients(vec![p.as_constant().unwrap()])));
        };
        let i = p.var_index(&var).unwrap();
        let deg = p.degree_in(&var)? as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in p.terms() {
            coeffs[e[i] as usize] = c.clone();
        }
        Ok((Some(var), UniPoly::from_coefficients(coeffs)))
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coefficients(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    fn monic(&self) -> UniPoly {
        match self.0.last() {
            None => self.clone(),
            Some(lc) => UniPoly(self.0.iter().map(|c| c / lc).collect()),
        }
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.0.last().unwrap();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let q = &r[k] / lc;
            if !q.is_zero() {
                for (i, c) in d.0.iter().enumerate() {
                    r[k - dd + i] -= &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::from_coefficients(r)
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// True iff the polynomial has no repeated root over C.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) | Some(1) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Divides by `x - r`, assuming `r` is a root.
    fn deflate(&self, r: &Rational) -> UniPoly {
        let n = self.0.len();
        let mut q = vec![Rational::zero(); n.saturating_sub(1)];
        let mut carry = Rational::zero();
        for k in (1..n).rev() {
            carry = &carry * r + &self.0[k];
            q[k - 1] = carry.clone();
        }
        UniPoly::from_coefficients(q)
    }
}

/// Rational roots with multiplicities, plus the degree of the remaining
/// factor that has no rational roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRoots {
    pub roots: Vec<(Rational, u32)>,
    pub cofactor_degree: usize,
}

fn divisors(n: &BigInt) -> Result<Vec<BigUint>, PolyError> {
    let n = n.magnitude().clone();
    if n.is_one() {
        return Ok(vec![BigUint::one()]);
    }
    let (fac, unfactored) = num_prime::nt_funcs::factors(n.clone(), None);
    if unfactored.is_some() {
        return Err(PolyError::Factorization(n.to_string()));
    }
    let mut divs = vec![BigUint::one()];
    for (p, k) in fac {
        let mut next = Vec::with_capacity(divs.len() * (k + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..k {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// All rational roots of a nonzero univariate polynomial.
pub fn univariate_rational_roots(p: &MultiPoly) -> Result<RationalRoots, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (_, u) = UniPoly::from_multipoly(p)?;
    uni_rational_roots(&u)
}

pub(crate) fn uni_rational_roots(u: &UniPoly) -> Result<RationalRoots, PolyError> {
    if u.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let zero_mult = u.0.iter().take_while(|c| c.is_zero()).count();
    let mut rest = UniPoly::from_coefficients(u.0[zero_mult..].to_vec());
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult as u32));
    }
    if rest.degree().unwrap_or(0) > 0 {
        // Integer, primitive representation for candidate generation.
        let mut lcm = BigInt::one();
        for c in &rest.0 {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = rest.0.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let lead = ints.last().unwrap().clone();
        let tail = ints[0].clone();
        let qs = divisors(&lead)?;
        let ps = divisors(&tail)?;
        let mut candidates = BTreeSet::new();
        for q in &qs {
            for pnum in &ps {
                let r = Rational::new(BigInt::from_biguint(Sign::Plus, pnum.clone()), BigInt::from_biguint(Sign::Plus, q.clone()));
                candidates.insert(-r.clone());
                candidates.insert(r);
            }
        }
        for r in candidates {
            let mut m = 0u32;
            while rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
                rest = rest.deflate(&r);
                m += 1;
            }
            if m > 0 {
                roots.push((r, m));
            }
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RationalRoots { roots, cofactor_degree: rest.degree().unwrap_or(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn roots(s: &str) -> RationalRoots {
        univariate_rational_roots(&MultiPoly::parse(s, &["z"]).unwrap()).unwrap()
    }

    #[test]
    fn double_and_simple_root() {
        let r = roots("z^3-3*z+2");
        assert_eq!(r.roots, vec![(rat(-2), 1), (rat(1), 2)]);
        assert_eq!(r.cofactor_degree, 0);
    }

    #[test]
    fn no_rational_roots() {
        let r = roots("z^2+1");
        assert!(r.roots.is_empty());
        assert_eq!(r.cofactor_degree, 2);
    }

    #[test]
    fn pure_power() {
        let r = univariate_rational_roots(&MultiPoly::parse("t^8", &["t"]).unwrap()).unwrap();
        assert_eq!(r.roots, vec![(rat(0), 8)]);
        assert_eq!(r.cofactor_degree, 0);
    }

    #[test]
    fn fractional_roots_and_mixed_cofactor() {
        let r = roots("(2*z-3)^2*(z^2-2)*(7*z+1)");
        assert_eq!(r.roots, vec![(crate::poly::ratio(-1, 7), 1), (crate::poly::ratio(3, 2), 2)]);
        assert_eq!(r.cofactor_degree, 2);
    }

    #[test]
    fn zero_is_an_error() {
        assert_eq!(
            univariate_rational_roots(&MultiPoly::zero(&["z"])),
            Err(PolyError::ZeroPolynomial)
        );
        assert!(roots("5").roots.is_empty());
    }

    #[test]
    fn gcd_and_squarefree() {
        let (_, a) = UniPoly::from_multipoly(&MultiPoly::parse("(z-1)^2*(z+2)", &["z"]).unwrap()).unwrap();
        assert!(!a.is_squarefree());
        let (_, b) = UniPoly::from_multipoly(&MultiPoly::parse("2187*z^8+324", &["z"]).unwrap()).unwrap();
        assert!(b.is_squarefree());
        let g = a.gcd(&a.derivative());
        assert_eq!(g.coefficients(), &[rat(-1), rat(1)]);
    }
}
