//! One line per acceptance criterion. Exits non-zero if a criterion fails
//! that is not listed in `KNOWN_UNATTAINABLE`, or if a listed one passes.

#[path = "../../core/tests/common/strategies.rs"]
mod strategies;

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use strategies::{constructed_system, poly_in, r, rational, section, xy};
use tricover::cover::{
    check_smooth_over_infinity, classify_cover, cubic_on, invariants_pushforward, singular_locus, CaseLabel,
    ClassificationReport, CoverSpec, PresetTag, SingularityType, TraceModulePreset,
};
use tricover::f3::{h0, transition, transition_inverse, Chart, DivisorClass};
use tricover::ideal::{groebner, rational_solutions, rational_solutions_with, GroebnerBasis, Ideal, SolverConfig};
use tricover::poly::{multiplicity_at, resultant_in, MultiPoly, PlanePoint};
use tricover_cli::datasets;
use tricover_cli::repro::{golden_discriminant_n, poly_diff};

/// Criteria that cannot pass as stated: the reason, and the exact failure
/// detail expected (anything else is reported as a regression).
const KNOWN_UNATTAINABLE: &[(u32, &str, &str)] = &[(
    5,
    "the typed s0 ends in 2*y; the transition of the constant term 2 of a section of 6σ∞+15R is 2*y^15",
    "mismatch: s0 [s] typed 2 computed 0, s0 [s^15] typed 0 computed 2",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn spec(name: &str) -> CoverSpec {
    datasets::get(name).unwrap().cover_file().to_spec().unwrap()
}

/// Every basis produced while checking the criteria, for criterion 7.
struct Bases(Vec<GroebnerBasis>);

fn solve(gens: Vec<MultiPoly>, order: &[&str], bases: &mut Bases) -> (GroebnerBasis, tricover::ideal::SolutionSet) {
    let ideal = Ideal::new(gens, order).unwrap();
    let gb = groebner(&ideal, &SolverConfig::default()).unwrap();
    let sols = rational_solutions_with(&ideal, &gb).unwrap();
    bases.0.push(gb.clone());
    (gb, sols)
}

fn jacobian(f: &MultiPoly, vars: &[&str]) -> Vec<MultiPoly> {
    let mut out = vec![f.clone()];
    out.extend(vars.iter().map(|v| f.differentiate(v).unwrap()));
    out
}

fn criterion_1(bases: &mut Bases) -> Outcome {
    let start = Instant::now();
    let c = cubic_on(&spec("N"), Chart::V0).unwrap();
    let (_, sols) = solve(jacobian(&c.polynomial(), &["z", "t", "u"]), &["z", "u", "t"], bases);
    let v0_ok = sols.to_string() == "[[z=1,u=0,t=0]]" && sols.complete_over_c;
    // The at-infinity system exactly as typed, over (z, u, y).
    let v = ["z", "u", "y"];
    let r0 = MultiPoly::parse("36*y*u^3-45*y^4*u^2+18*y^7*u-3*y^10+3-3*y+3*y^2", &v).unwrap();
    let s0 = MultiPoly::parse("-27*u^5+135*y^3*u^4-144*y^6*u^3+72*y^9*u^2-18*y^12*u+2*y", &v).unwrap();
    let z = MultiPoly::var(&v, "z").unwrap();
    let f0 = &(&(&(&z * &z) * &z) + &(&r0 * &z)) + &s0;
    let mut sing0 = vec![f0.clone(), f0.differentiate("z").unwrap(), f0.differentiate("y").unwrap(), f0.differentiate("u").unwrap()];
    sing0.push(MultiPoly::var(&v, "y").unwrap());
    let (gb_typed, _) = solve(sing0, &["z", "u", "y"], bases);
    // The same system built from the transitioned sections.
    let c1 = cubic_on(&spec("N"), Chart::V1).unwrap();
    let mut sys = jacobian(&c1.polynomial(), &["z", "v", "s"]);
    sys.push(MultiPoly::var(&["z", "s", "v"], "s").unwrap());
    let (gb_ours, _) = solve(sys, &["z", "v", "s"], bases);
    let elapsed = start.elapsed();
    outcome(
        v0_ok && gb_typed.is_trivial() && gb_ours.is_trivial() && elapsed < Duration::from_secs(60),
        format!(
            "V0 solutions {} (complete {}); typed sing0 basis {}; transitioned sing0 basis {}; {:.2?}",
            sols, sols.complete_over_c, gb_typed, gb_ours, elapsed
        ),
    )
}

fn criterion_2() -> Outcome {
    let c = cubic_on(&spec("N"), Chart::V0).unwrap();
    let disc = c.discriminant();
    let golden = golden_discriminant_n();
    let diff = poly_diff("D", &golden, &disc);
    let listed = [((0, 10), "19683"), ((0, 9), "-10206"), ((0, 8), "2187"), ((8, 0), "324"), ((30, 0), "108")];
    let vars = ["t".to_string(), "u".to_string()];
    let d = disc.align_to(&vars).unwrap();
    let listed_ok = listed.iter().all(|((t, u), v)| d.coefficient(&[*t, *u]).to_string() == *v);
    outcome(
        diff.is_empty() && listed_ok,
        format!("{} terms, {} coefficient differences, listed coefficients {}", d.num_terms(), diff.len(), if listed_ok { "match" } else { "differ" }),
    )
}

fn single_point(r: &ClassificationReport) -> Option<&SingularityType> {
    (r.singular_points.len() == 1).then(|| &r.singular_points[0].branch_type)
}

fn criterion_3(bases: &mut Bases) -> Outcome {
    let start = Instant::now();
    let want = [
        ("N", CaseLabel::N, (8, 4), SingularityType::OrdinaryMultiple { m: 8 }),
        ("M2", CaseLabel::M2, (8, 4), SingularityType::TripleTriple),
        ("M3", CaseLabel::M3, (7, 4), SingularityType::OrdinaryMultiple { m: 4 }),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, label, (k2, pg), kind) in want {
        let r = classify_cover(&spec(name)).unwrap();
        let inf = check_smooth_over_infinity(&spec(name)).unwrap();
        bases.0.extend(inf.pieces.into_iter().map(|p| p.basis));
        let locus = singular_locus(&spec(name), Chart::V0, &SolverConfig::default()).unwrap();
        bases.0.extend(locus.pieces.into_iter().map(|(_, gb, _)| gb));
        let ok = r.case_label == label && r.k2 == Some(k2) && r.pg == Some(pg) && single_point(&r) == Some(&kind);
        pass &= ok;
        let inv = r.k2.zip(r.pg).map_or("-".into(), |(k, p)| format!("({},{})", k, p));
        parts.push(format!("{}: {} {} {}", name, r.case_label, inv, single_point(&r).map_or("-".into(), |k| k.to_string())));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(300);
    outcome(pass, format!("{}; {:.2?}", parts.join("; "), elapsed))
}

fn criterion_4(bases: &mut Bases) -> Outcome {
    let m1 = spec("M1");
    let inf = check_smooth_over_infinity(&m1).unwrap();
    let locus = singular_locus(&m1, Chart::V0, &SolverConfig::default()).unwrap();
    let all_trivial = inf.pieces.iter().all(|p| p.basis.is_trivial()) && locus.pieces.iter().all(|(_, gb, _)| gb.is_trivial());
    bases.0.extend(inf.pieces.iter().map(|p| p.basis.clone()));
    bases.0.extend(locus.pieces.iter().map(|(_, gb, _)| gb.clone()));
    let r1 = classify_cover(&m1).unwrap();
    let r4 = classify_cover(&spec("M4_PinZ")).unwrap();
    let pass = all_trivial
        && r1.case_label == CaseLabel::M1
        && (r1.k2, r1.pg) == (Some(9), Some(5))
        && r4.case_label == CaseLabel::M4PinZ
        && (r4.k2, r4.pg) == (Some(6), Some(4));
    outcome(
        pass,
        format!(
            "M1: every Jacobian basis is [1]: {}, {} {:?}; M4_PinZ: {} {:?}",
            all_trivial,
            r1.case_label,
            r1.k2.zip(r1.pg),
            r4.case_label,
            r4.k2.zip(r4.pg)
        ),
    )
}

/// Reads a typed polynomial over `(base, fibre)` names and moves it to V1's
/// `(s, v)`.
fn typed_v1(text: &str, base: &str, fibre: &str) -> MultiPoly {
    let p = MultiPoly::parse(text, &[base, fibre]).unwrap();
    MultiPoly::from_terms(vec!["s".into(), "v".into()], p.terms().map(|(e, c)| (e.clone(), c.clone())))
}

fn criterion_5() -> Outcome {
    let mut mismatches = Vec::new();
    let mut check = |label: &str, ours: MultiPoly, typed: MultiPoly| {
        if ours != typed {
            let d = poly_diff(label, &typed, &ours);
            mismatches.push(d.iter().map(|e| format!("{} typed {} computed {}", e.key, e.expected, e.actual)).collect::<Vec<_>>().join(", "));
        }
    };
    let n = spec("N");
    let c1 = cubic_on(&n, Chart::V1).unwrap();
    check("r0", c1.r.clone(), typed_v1("36*y*u^3-45*y^4*u^2+18*y^7*u-3*y^10+3-3*y+3*y^2", "y", "u"));
    check("s0", c1.s.clone(), typed_v1("-27*u^5+135*y^3*u^4-144*y^6*u^3+72*y^9*u^2-18*y^12*u+2*y", "y", "u"));
    let m2 = spec("M2");
    let [_, _, c, d] = m2.general_data().unwrap();
    check("d0", transition(&d).unwrap().poly().clone(), typed_v1("(s^2+1)*u^2+2*s^5*u-1+s-s^2-s^8", "s", "u"));
    check("c0", transition(&c).unwrap().poly().clone(), typed_v1("-2*u^4-2*s^3*u^3+6*s^9*u-2*s^12", "s", "u"));
    let pass = mismatches.is_empty();
    outcome(pass, if pass { "r0, s0, d0, c0 match".into() } else { format!("mismatch: {}", mismatches.join("; ")) })
}

fn criterion_6() -> Outcome {
    let dims = [((4, 8), 18), ((2, 4), 7), ((1, 3), 5), ((1, 4), 7)];
    let dims_ok = dims.iter().all(|((a, b), n)| h0(DivisorClass::new(*a, *b)) == *n);
    let pg = |t| invariants_pushforward(TraceModulePreset::new(t)).0;
    let pgs = (pg(PresetTag::Mi), pg(PresetTag::Mii), pg(PresetTag::N));
    outcome(
        dims_ok && pgs == (5, 4, 10),
        format!(
            "h0: {}; p_g Mi {} Mii {} N {}",
            dims.iter().map(|((a, b), _)| format!("({},{})={}", a, b, h0(DivisorClass::new(*a, *b)))).collect::<Vec<_>>().join(" "),
            pgs.0,
            pgs.1,
            pgs.2
        ),
    )
}

fn run_cases<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn criterion_7(bases: &mut Bases) -> Outcome {
    let start = Instant::now();
    let mut results = Vec::new();
    results.push((
        "resultant = discriminant (50)",
        run_cases(50, (poly_in(&["t", "u"], 3, 4), poly_in(&["t", "u"], 3, 4)), |(p, q)| {
            let vars: Vec<String> = ["z", "t", "u"].iter().map(|s| s.to_string()).collect();
            let (p, q) = (p.align_to(&vars).unwrap(), q.align_to(&vars).unwrap());
            let z = MultiPoly::var(&["z", "t", "u"], "z").unwrap();
            let f = &(&(&(&z * &z) * &z) + &(&p * &z)) + &q;
            let res = resultant_in(&f, &f.differentiate("z").unwrap(), "z").unwrap().align_to(&vars).unwrap();
            let disc = &(&(&p * &p) * &p).scale(&r(4, 1)) + &(&q * &q).scale(&r(27, 1));
            prop_assert_eq!(res, disc);
            Ok(())
        }),
    ));
    results.push((
        "transition involution (100)",
        run_cases(100, section(), |s| {
            prop_assert_eq!(transition_inverse(&transition(&s).unwrap()).unwrap(), s);
            Ok(())
        }),
    ));
    results.push((
        "multiplicity additivity (100)",
        run_cases(100, (xy(), xy(), rational(), rational()), |(a, b, x, y)| {
            if a.is_zero() || b.is_zero() {
                return Ok(());
            }
            let pt: PlanePoint = [("x".to_string(), x), ("y".to_string(), y)].into_iter().collect();
            let m = |p: &MultiPoly| multiplicity_at(p, &pt).unwrap();
            prop_assert_eq!(m(&(&a * &b)), m(&a) + m(&b));
            Ok(())
        }),
    ));
    let solver_bases = std::sync::Mutex::new(Vec::new());
    results.push((
        "solver exactness (25)",
        run_cases(25, (prop::collection::btree_map(-5i64..=5, rational(), 1..=4), any::<bool>()), |(pts, irrational)| {
            let xs: Vec<_> = pts.keys().map(|k| r(*k, 2)).collect();
            let ys: Vec<_> = pts.values().cloned().collect();
            let (ideal, mut expect) = constructed_system(&xs, &ys, irrational);
            let gb = groebner(&ideal, &SolverConfig::default()).unwrap();
            let sols = rational_solutions(&ideal, &SolverConfig::default()).unwrap();
            solver_bases.lock().unwrap().push(gb);
            let mut got = sols.points.clone();
            let key = |p: &PlanePoint| (p["x"].clone(), p["y"].clone());
            got.sort_by_key(key);
            expect.sort_by_key(key);
            prop_assert_eq!(got, expect);
            prop_assert_eq!(sols.complete_over_c, !irrational);
            Ok(())
        }),
    ));
    bases.0.extend(solver_bases.into_inner().unwrap());
    let n_bases = bases.0.len();
    let bad = bases.0.iter().filter(|gb| !gb.satisfies_buchberger_criterion()).count();
    results.push(("Buchberger criterion on every emitted basis", if bad == 0 { Ok(()) } else { Err(format!("{} of {} fail", bad, n_bases)) }));
    let elapsed = start.elapsed();
    let pass = results.iter().all(|(_, r)| r.is_ok()) && elapsed < Duration::from_secs(300);
    let parts: Vec<String> = results
        .iter()
        .map(|(name, r)| match r {
            Ok(()) => format!("{} ok", name),
            Err(e) => format!("{} FAILED ({})", name, e),
        })
        .collect();
    outcome(pass, format!("{}; {} bases checked; {:.2?}", parts.join("; "), n_bases, elapsed))
}

fn main() {
    let mut bases = Bases(Vec::new());
    let results = vec![
        (1, criterion_1(&mut bases)),
        (2, criterion_2()),
        (3, criterion_3(&mut bases)),
        (4, criterion_4(&mut bases)),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7(&mut bases)),
    ];
    let mut unexpected = 0;
    for (n, o) in &results {
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _, _)| k == n);
        println!("criterion {}: {}: {}", n, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        match (o.pass, known) {
            (false, Some((_, why, detail))) => {
                println!("    known unattainable: {}", why);
                if o.detail != *detail {
                    println!("    but the failure differs from the recorded one: {}", detail);
                    unexpected += 1;
                }
            }
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("    listed as unattainable but passed; update KNOWN_UNATTAINABLE");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        eprintln!("{} criteria did not behave as recorded", unexpected);
        std::process::exit(1);
    }
}
