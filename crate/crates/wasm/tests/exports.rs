use fopt_wasm::{bounds_curve, evaluate, transforms};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn curve_matches_closed_forms_at_two() {
    let v = parse(&bounds_curve(1.0, 3.0, 3));
    assert_eq!(v["ell"][1], 2.0);
    assert!((v["upper"][1].as_f64().unwrap() - 3.5).abs() < 1e-12);
    assert!((v["lower"][1].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn hhat_of_p1_vanishes_outside_the_half_interval() {
    let v = parse(&transforms("p1", -0.6, 0.6, 13));
    let (x, h) = (v["x"].as_array().unwrap(), v["hhat"].as_array().unwrap());
    for (x, h) in x.iter().zip(h) {
        if x.as_f64().unwrap().abs() > 0.5 {
            assert_eq!(h.as_f64(), Some(0.0));
        }
    }
    assert_eq!(h[6].as_f64(), Some(1.0));
}

#[test]
fn evaluation_reports_certified_bounds() {
    let v = parse(&evaluate("ep3", "1"));
    let value = v["value"].as_array().unwrap();
    assert!(value[0].as_f64().unwrap() <= 13.0 / 12.0 && 13.0 / 12.0 <= value[1].as_f64().unwrap());
    assert_eq!(v["numerator_constant"], "13/6");
    assert_eq!(v["direction"], "upper_bound_inf");
}
