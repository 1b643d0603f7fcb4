//! Local analysis of a polynomial at a point: multiplicity, tangent cone,
//! and the squarefree test for binary forms.

use num_traits::Zero;

use super::univariate::UniPoly;
use super::{MultiPoly, PlanePoint, PolyError};

fn translated_nonzero(p: &MultiPoly, pt: &PlanePoint) -> Result<MultiPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    for v in p.vars() {
        if !pt.contains_key(v) {
            return Err(PolyError::MissingBinding(v.clone()));
        }
    }
    p.translate(pt)
}

/// Order of vanishing of `p` at `pt`: the minimal total degree after moving
/// `pt` to the origin. Zero exactly when `p(pt) != 0`.
pub fn multiplicity_at(p: &MultiPoly, pt: &PlanePoint) -> Result<u32, PolyError> {
    let q = translated_nonzero(p, pt)?;
    Ok(q.min_degree().expect("translation preserves nonzero"))
}

/// The lowest-degree homogeneous part of `p` expanded at `pt`, written in
/// the same variables (read as coordinates centred at `pt`).
pub fn lowest_form(p: &MultiPoly, pt: &PlanePoint) -> Result<MultiPoly, PolyError> {
    let q = translated_nonzero(p, pt)?;
    let m = q.min_degree().expect("translation preserves nonzero");
    Ok(q.homogeneous_part(m))
}

/// Whether a nonzero binary form has no repeated linear factor over C.
pub fn binary_form_squarefree(form: &MultiPoly) -> Result<bool, PolyError> {
    if form.vars().len() != 2 {
        return Err(PolyError::WrongArity { expected: 2, found: form.vars().len() });
    }
    if form.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !form.is_homogeneous() {
        return Err(PolyError::NotHomogeneous);
    }
    let deg = form.total_degree().unwrap();
    // Dehomogenize at the second variable: F(x, 1).
    let g = UniPoly::from_coefficients(
        (0..=deg)
            .map(|k| {
                let mut e = vec![0u32; 2];
                e[0] = k;
                e[1] = deg - k;
                form.coefficient(&e)
            })
            .collect(),
    );
    // deg F - deg g is the multiplicity of the root at infinity, i.e. of the
    // factor given by the second variable.
    let at_infinity = deg as usize - g.degree().unwrap_or(0);
    if at_infinity > 1 {
        return Ok(false);
    }
    Ok(g.is_squarefree())
}

/// Certificate check for a claimed multiplicity `m` at `pt`: every partial
/// derivative of order `< m` vanishes there and some order-`m` partial does not.
pub fn verify_multiplicity(p: &MultiPoly, pt: &PlanePoint, m: u32) -> Result<bool, PolyError> {
    let mut layer = vec![p.clone()];
    for order in 0..=m {
        if order < m {
            for q in &layer {
                if !q.evaluate(pt)?.is_zero() {
                    return Ok(false);
                }
            }
            let mut next = Vec::new();
            for q in &layer {
                for v in p.vars() {
                    let d = q.differentiate(v)?;
                    if !d.is_zero() && !next.contains(&d) {
                        next.push(d);
                    }
                }
            }
            layer = next;
        } else {
            for q in &layer {
                if !q.evaluate(pt)?.is_zero() {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::point;

    const TU: &[&str] = &["t", "u"];

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, TU).unwrap()
    }

    #[test]
    fn cusp_lowest_form() {
        let origin = point(&[("t", 0), ("u", 0)]);
        let f = MultiPoly::parse("y^3-x^4", &["x", "y"]).unwrap();
        let o = point(&[("x", 0), ("y", 0)]);
        assert_eq!(multiplicity_at(&f, &o).unwrap(), 3);
        assert_eq!(lowest_form(&f, &o).unwrap().to_string(), "y^3");
        let q = p("t+u+5");
        assert_eq!(multiplicity_at(&q, &origin).unwrap(), 0);
        assert_eq!(lowest_form(&q, &origin).unwrap().to_string(), "5");
    }

    #[test]
    fn zero_polynomial_rejected() {
        let origin = point(&[("t", 0), ("u", 0)]);
        assert_eq!(multiplicity_at(&p("0"), &origin), Err(PolyError::ZeroPolynomial));
        assert_eq!(lowest_form(&p("0"), &origin), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn multiplicity_off_origin() {
        let f = p("(t-1)^2*(u-2)+(t-1)^3");
        let at = point(&[("t", 1), ("u", 2)]);
        assert_eq!(multiplicity_at(&f, &at).unwrap(), 3);
        assert_eq!(lowest_form(&f, &at).unwrap().to_string(), "t^3+t^2*u");
        assert!(verify_multiplicity(&f, &at, 3).unwrap());
        assert!(!verify_multiplicity(&f, &at, 2).unwrap());
    }

    #[test]
    fn squarefree_binary_forms() {
        assert!(binary_form_squarefree(&p("2187*u^8+324*t^8")).unwrap());
        assert!(!binary_form_squarefree(&p("u^3")).unwrap());
        assert!(binary_form_squarefree(&p("u*t*(u-t)")).unwrap());
        assert!(!binary_form_squarefree(&p("t^2*u")).unwrap());
        assert!(!binary_form_squarefree(&p("t*u^2")).unwrap());
        assert!(binary_form_squarefree(&p("t*u")).unwrap());
        assert!(binary_form_squarefree(&p("t^2+u^2")).unwrap());
        assert!(!binary_form_squarefree(&p("(t-u)^2*(t+u)")).unwrap());
        assert_eq!(binary_form_squarefree(&p("t^2+u")), Err(PolyError::NotHomogeneous));
        let three = MultiPoly::parse("x*y*z", &["x", "y", "z"]).unwrap();
        assert_eq!(binary_form_squarefree(&three), Err(PolyError::WrongArity { expected: 2, found: 3 }));
    }
}
