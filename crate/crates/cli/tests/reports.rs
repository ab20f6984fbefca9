//! JSON round trips, the exit-code contract and the tamper check, through
//! the library interface.

use fopt_cli::commands::{self, OptimizeArgs, SideArg};
use fopt_cli::report::*;
use fopt_cli::verify::{self, VerifyInputs};
use fopt_cli::{CliError, EXIT_INFEASIBLE, EXIT_OPTIMIZATION, EXIT_USAGE};
use fopt_core::rational::int;
use fopt_core::{EvenPolynomial, Error};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let compact = serde_json::to_string(x).unwrap();
    assert_eq!(&serde_json::from_str::<T>(&compact).unwrap(), x);
    let pretty = serde_json::to_string_pretty(x).unwrap();
    assert_eq!(&serde_json::from_str::<T>(&pretty).unwrap(), x);
}

#[test]
fn every_report_type_round_trips() {
    for (kind, poly) in [("ep1", "p3"), ("ep2", "q2"), ("ep3", "p1"), ("ep4", "p2"), ("j1", "3,1"), ("j2", "1")] {
        round_trip(&commands::eval(kind, poly, None, 128).unwrap());
    }
    round_trip(&commands::triangle("5.8", Some("1.999999999"), SideArg::Both, true, 128).unwrap());
    round_trip(&commands::triangle("0.3", None, SideArg::Both, true, 128).unwrap());
    let seeds = vec!["5,-1".to_string()];
    let args = OptimizeArgs { problem: "ep4", degree: 4, starts: 2, seed: 1, seed_polys: &seeds, max_evals: Some(2000) };
    round_trip(&commands::optimize(&args).unwrap());
    round_trip(&commands::constants(&[1, 5], 128).unwrap());
    let report = VerifyReport::new(vec![
        Check { name: "a".into(), anchor: "x".into(), claimed: "< 1".into(), computed: Some([0.5, 0.75]), pass: true },
        Check { name: "b".into(), anchor: "y".into(), claimed: "> 2".into(), computed: None, pass: false },
    ]);
    assert!(!report.all_pass);
    round_trip(&report);
    round_trip(&ErrorReport { error: "parse".into(), message: "bad \"input\"".into() });
}

#[test]
fn exit_code_contract() {
    assert_eq!(CliError::from(Error::Parse("x".into())).code, EXIT_USAGE);
    assert_eq!(CliError::from(Error::OutOfRange { name: "ell", detail: "".into() }).code, EXIT_USAGE);
    assert_eq!(CliError::from(Error::ZeroDenominator).code, EXIT_INFEASIBLE);
    assert_eq!(CliError::from(Error::GZeroNotPositive).code, EXIT_INFEASIBLE);
    assert_eq!(CliError::from(Error::IdenticallyZero).code, EXIT_INFEASIBLE);
    assert_eq!(CliError::from(Error::NoFeasibleCandidate).code, EXIT_OPTIMIZATION);
    assert_eq!((EXIT_USAGE, EXIT_INFEASIBLE, EXIT_OPTIMIZATION), (2, 3, 4));
}

fn with_last_p1_coefficient_shifted(by: i64) -> VerifyInputs {
    let mut inputs = VerifyInputs::default();
    let mut c = inputs.p1.even_coeffs().to_vec();
    *c.last_mut().unwrap() += int(by);
    inputs.p1 = EvenPolynomial::new(c);
    inputs
}

#[test]
fn tampered_p1_fails_its_check() {
    // 200 x^12 -> 190 x^12 pushes EP3 up to 1.0775421 > 1.077542
    let r = verify::run(&with_last_p1_coefficient_shifted(-10), 128);
    assert!(!r.all_pass);
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["ep3_p1"]);
}

#[test]
fn raising_the_top_p1_coefficient_by_one_still_certifies() {
    // 201 x^12 gives EP3 = 1.07754165, slightly better than 200 x^12
    let r = verify::run(&with_last_p1_coefficient_shifted(1), 128);
    let ep3 = r.checks.iter().find(|c| c.name == "ep3_p1").unwrap();
    assert!(ep3.pass);
    assert!(ep3.computed.unwrap()[1] < 1.077_541_67);
}
