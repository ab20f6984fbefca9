//! Frozen reference values from an independent 40-digit symbolic/mpmath
//! computation, and the published bounds for the four named polynomials.

use fopt_core::constants::{c0_enclosure, compute_c0};
use fopt_core::presets;
use fopt_core::rational::rat;
use fopt_core::{autocorrelate, eval_functional, EvalConfig, EvenPolynomial, FunctionalKind, DEFAULT_PRECISION};

use FunctionalKind::*;

fn value(kind: FunctionalKind, p: &EvenPolynomial) -> f64 {
    let c0 = c0_enclosure(DEFAULT_PRECISION);
    eval_functional(kind, p, &c0, &EvalConfig::default()).unwrap().value.mid_f64()
}

#[test]
fn c0_matches_reference_digits() {
    let c = compute_c0(128);
    assert!((c.value.mid_f64() + 0.217_233_628_211_221_657).abs() < 1e-17);
}

#[test]
fn functional_table_matches_reference() {
    // (polynomial, [EP1, EP2, EP3, EP4]) to 12 digits
    let table: [(&str, [f64; 4]); 5] = [
        ("1", [1.333_333_333_33, 0.927_588_790_596, 1.083_333_333_33, 0.981_897_197_649]),
        ("p1", [1.332_345_194_53, 0.921_674_978_559, 1.077_541_673_86, 0.976_477_858_237]),
        ("p2", [1.331_560_087_18, 0.927_818_936_548, 1.081_373_321_68, 0.982_144_501_176]),
        ("p3", [1.330_143_967_98, 0.926_558_442_371, 1.078_730_196_41, 0.981_011_580_075]),
        ("q2", [1.331_640_334_51, 0.927_819_834_59, 1.081_475_647_55, 0.982_143_371_7]),
    ];
    for (name, expected) in table {
        let p = presets::resolve(name).unwrap();
        for (kind, want) in [Ep1, Ep2, Ep3, Ep4].into_iter().zip(expected) {
            let got = value(kind, &p);
            assert!((got - want).abs() < 2e-11, "{kind} at {name}: {got} vs {want}");
        }
    }
}

#[test]
fn autocorrelation_of_five_minus_x_squared() {
    let ac = autocorrelate(&presets::p2());
    assert_eq!(ac.ghat_at_zero, rat(5803, 240));
    let expected = fopt_core::PolyQ::new(vec![rat(5803, 240), rat(-361, 16), rat(-59, 12), rat(10, 3), rat(0, 1), rat(-1, 30)]);
    assert_eq!(ac.q, expected);
}

#[test]
fn published_bounds_are_certified() {
    let c0 = c0_enclosure(DEFAULT_PRECISION);
    let cfg = EvalConfig::default();
    let cases = [
        (Ep3, presets::p1(), rat(1_077_542, 1_000_000)),
        (Ep4, presets::p2(), rat(982_144, 1_000_000)),
        (Ep1, presets::p3(), rat(1_330_144, 1_000_000)),
        (Ep2, presets::q2(), rat(927_819, 1_000_000)),
        // the older bracket 0.927818 < C- <= C+ < 1.330174 is improved on both ends
        (Ep1, presets::p3(), rat(1_330_174, 1_000_000)),
        (Ep2, presets::q2(), rat(927_818, 1_000_000)),
    ];
    for (kind, p, claim) in cases {
        let cert = eval_functional(kind, &p, &c0, &cfg).unwrap();
        assert!(cert.proves(&claim), "{kind} at {p}: {}", cert.certified_f64());
    }
}

#[test]
fn constant_polynomial_values_are_exact() {
    let c0 = c0_enclosure(DEFAULT_PRECISION);
    let cfg = EvalConfig::default();
    let one = EvenPolynomial::one();
    let ep3 = eval_functional(Ep3, &one, &c0, &cfg).unwrap();
    assert!(ep3.numerator_exact.is_exact());
    assert_eq!(ep3.numerator_exact.constant, rat(13, 6));
    assert!(ep3.value.contains_rational(&rat(13, 12)));
    let ep1 = eval_functional(Ep1, &one, &c0, &cfg).unwrap();
    assert!(ep1.value.contains_rational(&rat(4, 3)));
    let ep4 = eval_functional(Ep4, &one, &c0, &cfg).unwrap();
    let (lo, hi) = ep4.value.to_f64_bounds();
    assert!(lo > 0.981897 && hi < 0.981898);
    let ep2 = eval_functional(Ep2, &one, &c0, &cfg).unwrap();
    let (lo, hi) = ep2.value.to_f64_bounds();
    assert!(lo > 0.92758 && hi < 0.92759);
}

#[test]
fn reduced_j_functionals_coincide_with_ep() {
    let c0 = c0_enclosure(DEFAULT_PRECISION);
    let cfg = EvalConfig::default();
    for name in ["1", "p1", "p2", "q2", "3,1,-2"] {
        let p = presets::resolve(name).unwrap();
        for (j, ep) in [(J1A1, Ep2), (J2A1, Ep4)] {
            let a = eval_functional(j, &p, &c0, &cfg).unwrap();
            let b = eval_functional(ep, &p, &c0, &cfg).unwrap();
            assert_eq!(a.numerator_exact, b.numerator_exact, "{j} vs {ep} at {name}");
            assert_eq!(a.value, b.value, "{j} vs {ep} at {name}");
        }
    }
}
