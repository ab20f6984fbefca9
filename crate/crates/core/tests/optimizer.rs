use fopt_core::constants::c0_enclosure;
use fopt_core::praxis::{optimize_functional, optimize_ladder, principal_axis_minimize, OptimizerConfig};
use fopt_core::rational::rat;
use fopt_core::{presets, FunctionalKind, DEFAULT_PRECISION};

#[test]
fn same_seed_same_report() {
    let cfg = OptimizerConfig { starts: 4, seed: 11, ..Default::default() };
    let a = optimize_functional(FunctionalKind::Ep1, 4, &cfg, &[]).unwrap();
    let b = optimize_functional(FunctionalKind::Ep1, 4, &cfg, &[]).unwrap();
    assert_eq!(a, b);
}

#[test]
fn minimizer_is_deterministic_and_never_worse_than_start() {
    let f = |x: &[f64]| (x[0] - 0.3).abs() + (x[1] + x[0]).powi(2) + 0.1 * x[2].abs();
    let cfg = OptimizerConfig { dimension: 3, seed: 5, max_evals: 2000, ..Default::default() };
    let start = [2.0, -1.0, 0.5];
    let r1 = principal_axis_minimize(f, &cfg, &start);
    let r2 = principal_axis_minimize(f, &cfg, &start);
    assert_eq!(r1, r2);
    assert!(r1.value <= f(&start));
    assert!(r1.value < 1e-6, "{}", r1.value);
}

#[test]
fn degree_zero_values() {
    let c0 = c0_enclosure(DEFAULT_PRECISION);
    let cfg = OptimizerConfig::default();
    let ep1 = optimize_functional(FunctionalKind::Ep1, 0, &cfg, &[]).unwrap();
    assert!(ep1.certified.value.contains_rational(&rat(4, 3)));
    let ep2 = optimize_functional(FunctionalKind::Ep2, 0, &cfg, &[]).unwrap();
    let expected = c0.mul_rational(&rat(1, 3), DEFAULT_PRECISION).add_rational(&rat(1, 1), DEFAULT_PRECISION);
    assert!(ep2.certified.value.intersects(&expected));
    assert!(ep2.certified.value.width_f64() < 1e-30);
}

#[test]
fn rejects_bad_degrees() {
    let cfg = OptimizerConfig::default();
    assert!(optimize_functional(FunctionalKind::Ep1, 3, &cfg, &[]).is_err());
    assert!(optimize_functional(FunctionalKind::Ep1, 26, &cfg, &[]).is_err());
}

#[test]
fn seeded_search_is_at_least_as_good_as_its_seed() {
    let cfg = OptimizerConfig { starts: 1, seed: 3, max_evals: 4000, ..Default::default() };
    let r = optimize_functional(FunctionalKind::Ep4, 2, &cfg, &[presets::p2()]).unwrap();
    assert!(r.certified.proves(&rat(982_144, 1_000_000)));
    assert!((r.best_value - r.certified.certified_f64()).abs() <= 1e-6);
}

#[test]
fn higher_degree_does_not_lose_ground() {
    let cfg = OptimizerConfig { starts: 2, seed: 9, max_evals: 6000, ..Default::default() };
    let ladder = optimize_ladder(FunctionalKind::Ep3, &[2, 12], &cfg, &[]).unwrap();
    let (low, high) = (&ladder[0], &ladder[1]);
    assert!(high.certified.certified_f64() <= low.certified.certified_f64() + 1e-9);
    for r in &ladder {
        assert!((r.best_value - r.certified.certified_f64()).abs() <= 1e-6);
    }
}
