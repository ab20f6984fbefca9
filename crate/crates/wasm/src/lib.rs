//! Browser bindings. Every export takes plain strings/numbers and returns a
//! JSON string; failures come back as `{"error": "..."}` instead of throwing,
//! which keeps the functions callable (and testable) off the web as well.

use fopt_core::constants::c0_enclosure;
use fopt_core::rational::{format_rational, rationalize, to_f64};
use fopt_core::triangles::{lower_bound_closed, upper_bound_closed};
use fopt_core::{autocorrelate, eval_functional, presets, EvalConfig, FunctionalKind, Rational, DEFAULT_PRECISION};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

const MAX_POINTS: u32 = 20_000;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn finish(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => error(e),
    }
}

fn grid(from: f64, to: f64, points: u32) -> Result<Vec<Rational>, String> {
    if !(from.is_finite() && to.is_finite() && to > from) || !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("need finite from < to and 2 <= points <= {MAX_POINTS}"));
    }
    let (a, b) = (rationalize(from, 1_000_000), rationalize(to, 1_000_000));
    let n = Rational::from_integer((points - 1).into());
    Ok((0..points).map(|k| &a + (&b - &a) * Rational::from_integer(k.into()) / &n).collect())
}

/// Closed-form triangle bounds sampled on `points` values of `ell` in
/// `[from, to]` (non-positive `ell` is skipped): `{ell, upper, lower}`.
#[wasm_bindgen]
pub fn bounds_curve(from: f64, to: f64, points: u32) -> String {
    finish((|| {
        let (mut ell, mut upper, mut lower) = (Vec::new(), Vec::new(), Vec::new());
        for l in grid(from, to, points)? {
            if l <= Rational::from_integer(0.into()) {
                continue;
            }
            upper.push(upper_bound_closed(&l, 64).map_err(|e| e.to_string())?.mid_f64());
            lower.push(to_f64(&lower_bound_closed(&l).map_err(|e| e.to_string())?));
            ell.push(to_f64(&l));
        }
        Ok(json!({ "ell": ell, "upper": upper, "lower": lower }))
    })())
}

/// `hhat = p on [-1/2, 1/2]` and `ghat = hhat * hhat` sampled over `[from, to]`.
#[wasm_bindgen]
pub fn transforms(poly: &str, from: f64, to: f64, points: u32) -> String {
    finish((|| {
        let p = presets::resolve(poly).map_err(|e| e.to_string())?;
        if p.is_zero() {
            return Err("polynomial is identically zero".into());
        }
        let ac = autocorrelate(&p);
        let xs: Vec<f64> = grid(from, to, points)?.iter().map(to_f64).collect();
        let hhat: Vec<f64> = xs.iter().map(|&x| if x.abs() <= 0.5 { p.eval_f64(x) } else { 0.0 }).collect();
        let ghat: Vec<f64> = xs.iter().map(|&x| ac.ghat_f64(x)).collect();
        Ok(json!({ "poly": p.to_coeff_string(), "x": xs, "hhat": hhat, "ghat": ghat }))
    })())
}

/// Certified value of a functional (`ep1`..`ep4`, `j1`, `j2`) at a polynomial.
#[wasm_bindgen]
pub fn evaluate(problem: &str, poly: &str) -> String {
    finish((|| {
        let kind: FunctionalKind = problem.parse().map_err(|e: fopt_core::Error| e.to_string())?;
        let p = presets::resolve(poly).map_err(|e| e.to_string())?;
        let cfg = EvalConfig { m: 3, precision_bits: DEFAULT_PRECISION };
        let c = eval_functional(kind, &p, &c0_enclosure(DEFAULT_PRECISION), &cfg).map_err(|e| e.to_string())?;
        let pair = |e: &fopt_core::Enclosure| {
            let (lo, hi) = e.to_f64_bounds();
            json!([lo, hi])
        };
        Ok(json!({
            "problem": kind.name(),
            "direction": kind.direction().as_str(),
            "poly": p.to_coeff_string(),
            "numerator": pair(&c.numerator),
            "numerator_exact": c.numerator_exact.is_exact(),
            "numerator_constant": format_rational(&c.numerator_exact.constant),
            "numerator_c0_coeff": format_rational(&c.numerator_exact.c0_coeff),
            "denominator": pair(&c.denominator),
            "value": pair(&c.value),
            "certified_bound": c.certified_f64(),
        }))
    })())
}

/// The named polynomials as `{alias: coefficients}`.
#[wasm_bindgen]
pub fn preset_polynomials() -> String {
    let map: serde_json::Map<String, Value> =
        presets::ALIASES.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect();
    Value::Object(map).to_string()
}
