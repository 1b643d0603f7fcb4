//! Sylvester resultants with polynomial entries.

use super::{MultiPoly, PolyError};

/// Sylvester matrix of `f` and `g` in `var`: `deg g` rows of shifted
/// coefficients of `f` (leading coefficient first) on top, then `deg f`
/// rows of `g`.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<Vec<Vec<MultiPoly>>, PolyError> {
    let cf = f.coefficients_in(var)?;
    let cg = g.coefficients_in(var)?;
    let m = cf.len() - 1;
    let n = cg.len() - 1;
    let size = m + n;
    let zero = MultiPoly::zero_owned(f.vars().to_vec());
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts, deg) in [(&cf, n, m), (&cg, m, n)] {
        for i in 0..shifts {
            let mut row = vec![zero.clone(); size];
            for k in 0..=deg {
                row[i + k] = coeffs[deg - k].clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Fraction-free (Bareiss) determinant of a square matrix of polynomials.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<MultiPoly>>, vars: &[String]) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::constant_owned(vars.to_vec(), num_traits::One::one());
    }
    let mut sign = false;
    let mut prev = MultiPoly::constant_owned(vars.to_vec(), num_traits::One::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return MultiPoly::zero_owned(vars.to_vec()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Resultant of `f` and `g` eliminating `var`, as the raw Sylvester
/// determinant with the rows of `f` on top.
pub fn resultant_in(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (f, g) = f.aligned_with(g);
    if f.var_index(var).is_none() {
        return Err(PolyError::UnknownVariable(var.to_string()));
    }
    let df = f.degree_in(var)?;
    let dg = g.degree_in(var)?;
    if df == 0 && dg == 0 {
        return Err(PolyError::ConstantInVariable(var.to_string()));
    }
    let vars = f.vars().to_vec();
    Ok(bareiss_determinant(sylvester_matrix(&f, &g, var)?, &vars))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_discriminant_identity() {
        let v = &["z", "r", "s"];
        let f = MultiPoly::parse("z^3+r*z+s", v).unwrap();
        let fz = f.differentiate("z").unwrap();
        let res = resultant_in(&f, &fz, "z").unwrap();
        assert_eq!(res, MultiPoly::parse("4*r^3+27*s^2", v).unwrap());
    }

    #[test]
    fn specialized_cubic() {
        let f = MultiPoly::parse("z^3+1", &["z"]).unwrap();
        let g = MultiPoly::parse("3*z^2", &["z"]).unwrap();
        assert_eq!(resultant_in(&f, &g, "z").unwrap().to_string(), "27");
    }

    #[test]
    fn linear_sign_convention() {
        let v = &["z", "a", "b"];
        let f = MultiPoly::parse("z-a", v).unwrap();
        let g = MultiPoly::parse("z-b", v).unwrap();
        assert_eq!(resultant_in(&f, &g, "z").unwrap(), MultiPoly::parse("a-b", v).unwrap());
    }

    #[test]
    fn constant_inputs_rejected() {
        let v = &["z", "a"];
        let f = MultiPoly::parse("a+1", v).unwrap();
        let g = MultiPoly::parse("a", v).unwrap();
        assert_eq!(resultant_in(&f, &g, "z"), Err(PolyError::ConstantInVariable("z".into())));
        assert_eq!(resultant_in(&MultiPoly::zero(v), &g, "z"), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn resultant_with_a_constant_is_a_power() {
        let f = MultiPoly::parse("z^2+1", &["z"]).unwrap();
        let g = MultiPoly::parse("3", &["z"]).unwrap();
        assert_eq!(resultant_in(&f, &g, "z").unwrap().to_string(), "9");
    }
}
