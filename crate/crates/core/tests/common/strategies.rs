//! Generators shared by the property suites and the acceptance harness.
#![allow(dead_code)]

use proptest::prelude::*;

use tricover::f3::{section_basis, Chart, DivisorClass, Section};
use tricover::ideal::Ideal;
use tricover::poly::{MultiPoly, PlanePoint, Rational};

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn poly_in(vars: &'static [&'static str], max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -9i64..=9, 1i64..=3), 0..=max_terms).prop_map(
        move |terms| {
            MultiPoly::from_terms(
                vars.iter().map(|s| s.to_string()).collect(),
                terms.into_iter().map(|(e, c, d)| (e, r(c, d))),
            )
        },
    )
}

pub fn xy() -> impl Strategy<Value = MultiPoly> {
    poly_in(&["x", "y"], 3, 5)
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| r(n, d))
}

pub fn class() -> impl Strategy<Value = DivisorClass> {
    (-3i64..=8, -5i64..=30).prop_map(|(a, b)| DivisorClass::new(a, b))
}

/// A section of a random effective class with random coefficients on part
/// of its basis.
pub fn section() -> impl Strategy<Value = Section> {
    (0i64..=4, 0i64..=14)
        .prop_flat_map(|(a, b)| {
            let d = DivisorClass::new(a, b);
            let n = section_basis(d).len();
            (Just(d), prop::collection::vec((0..n, -9i64..=9), 0..=6))
        })
        .prop_map(|(d, picks)| {
            let basis = section_basis(d);
            let terms = picks.into_iter().map(|(i, c)| (vec![basis[i].0, basis[i].1], r(c, 1)));
            let poly = MultiPoly::from_terms(vec!["t".into(), "u".into()], terms);
            Section::new(Chart::V0, poly, d).unwrap()
        })
}

/// Points with distinct x, as `{∏(x − xᵢ) · extra = 0, y = L(x)}` mixed by a
/// unimodular change of generators.
pub fn constructed_system(xs: &[Rational], ys: &[Rational], irrational: bool) -> (Ideal, Vec<PlanePoint>) {
    let v = ["x", "y"];
    let x = MultiPoly::var(&v, "x").unwrap();
    let y = MultiPoly::var(&v, "y").unwrap();
    let one = MultiPoly::constant(&v, r(1, 1));
    let mut g1 = one.clone();
    for xi in xs {
        g1 = &g1 * &(&x - &MultiPoly::constant(&v, xi.clone()));
    }
    if irrational {
        g1 = &g1 * &(&(&x * &x) - &MultiPoly::constant(&v, r(2, 1)));
    }
    // Lagrange interpolant through (xᵢ, yᵢ).
    let mut interp = MultiPoly::zero(&v);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut term = MultiPoly::constant(&v, yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let scale = r(1, 1) / (xi - xj);
                term = &term * &(&x - &MultiPoly::constant(&v, xj.clone())).scale(&scale);
            }
        }
        interp = &interp + &term;
    }
    let g2 = &y - &interp;
    let mixed = &g1 + &(&(&x + &y) * &g2);
    let ideal = Ideal::new(vec![mixed, g2], &["y", "x"]).unwrap();
    let pts = xs
        .iter()
        .zip(ys)
        .map(|(a, b)| [("x".to_string(), a.clone()), ("y".to_string(), b.clone())].into_iter().collect())
        .collect();
    (ideal, pts)
}

