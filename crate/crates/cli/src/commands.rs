use std::fmt::Write as _;

use fopt_core::constants::{c0_enclosure, compute_c0, dirichlet_min};
use fopt_core::praxis::{optimize_functional, OptimizerConfig};
use fopt_core::rational::{format_rational, parse_rational, to_f64};
use fopt_core::triangles::{
    build_config, general_lower, general_upper, lower_bound_closed, upper_bound_closed, validate_config, Side,
};
use fopt_core::{autocorrelate, eval_functional, presets, EvalConfig, FunctionalKind, Rational};

use crate::report::*;
use crate::{CliError, CliResult};

/// Grid size passed to the configuration validator on top of the exact
/// breakpoint check.
const VALIDATION_GRID: usize = 64;

fn parse_kind(s: &str) -> CliResult<FunctionalKind> {
    s.parse().map_err(|_| CliError::usage(format!("unknown problem {s:?}; expected one of ep1, ep2, ep3, ep4, j1, j2")))
}

pub fn eval(problem: &str, poly: &str, m: Option<u32>, precision_bits: u32) -> CliResult<EvalReport> {
    let kind = parse_kind(problem)?;
    let p = presets::resolve(poly)?;
    let cfg = EvalConfig { m: m.unwrap_or(EvalConfig::default().m), precision_bits };
    let cert = eval_functional(kind, &p, &c0_enclosure(precision_bits), &cfg)?;
    Ok(EvalReport { poly: p.to_coeff_string(), m: cfg.m, precision_bits, certificate: CertificateJson::new(&cert) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Upper,
    Lower,
    Both,
}

impl SideArg {
    fn sides(self) -> &'static [Side] {
        match self {
            SideArg::Upper => &[Side::Upper],
            SideArg::Lower => &[Side::Lower],
            SideArg::Both => &[Side::Upper, Side::Lower],
        }
    }
}

pub fn triangle(ell: &str, delta: Option<&str>, side: SideArg, emit_config: bool, precision_bits: u32) -> CliResult<TriangleReport> {
    let ell = parse_rational(ell)?;
    let delta = delta.map(parse_rational).transpose()?;
    let sides = side.sides();
    let has = |s: Side| sides.contains(&s);
    let mut report = TriangleReport {
        ell: format_rational(&ell),
        delta: delta.as_ref().map(format_rational),
        upper: None,
        lower: None,
        general_upper: None,
        general_lower: None,
        configs: Vec::new(),
    };
    if has(Side::Upper) {
        report.upper = Some(bounds(&upper_bound_closed(&ell, precision_bits)?));
    }
    if has(Side::Lower) {
        report.lower = Some(ExactValue::new(&lower_bound_closed(&ell)?));
    }
    if let Some(d) = &delta {
        if has(Side::Upper) {
            report.general_upper = Some(ExactValue::new(&general_upper(&ell, d)?));
        }
        if has(Side::Lower) && &ell >= d {
            report.general_lower = Some(ExactValue::new(&general_lower(&ell, d)?));
        }
    }
    if emit_config {
        let d = delta.clone().unwrap_or_else(|| Rational::from_integer(2.into()));
        for &s in sides {
            let cfg = build_config(&ell, &d, s)?;
            let v = ValidationJson::new(validate_config(&cfg, VALIDATION_GRID));
            report.configs.push(ConfigJson::new(&cfg, v));
        }
    }
    Ok(report)
}

pub struct OptimizeArgs<'a> {
    pub problem: &'a str,
    pub degree: usize,
    pub starts: usize,
    pub seed: u64,
    pub seed_polys: &'a [String],
    pub max_evals: Option<usize>,
}

pub fn optimize(args: &OptimizeArgs) -> CliResult<OptimizeJson> {
    let kind = parse_kind(args.problem)?;
    let seeds = args.seed_polys.iter().map(|s| presets::resolve(s)).collect::<Result<Vec<_>, _>>()?;
    let defaults = OptimizerConfig::default();
    let cfg = OptimizerConfig {
        starts: args.starts,
        seed: args.seed,
        max_evals: args.max_evals.unwrap_or(defaults.max_evals),
        ..defaults
    };
    let r = optimize_functional(kind, args.degree, &cfg, &seeds)?;
    Ok(OptimizeJson::new(&r, args.starts, args.seed))
}

pub fn constants(ns: &[u32], precision_bits: u32) -> CliResult<ConstantsReport> {
    if ns.contains(&0) {
        return Err(CliError::usage("Dirichlet kernel order must be positive"));
    }
    let c = compute_c0(precision_bits);
    let two_c0 = 2.0 * c.value.mid_f64();
    let dirichlet = ns
        .iter()
        .map(|&n| {
            let d = dirichlet_min(n, precision_bits);
            DirichletJson {
                n,
                m_n: bounds(&d.m_n),
                ratio: bounds(&d.ratio),
                argmin: d.argmin,
                scaled_gap: n as f64 * (d.ratio.mid_f64() - two_c0),
            }
        })
        .collect();
    Ok(ConstantsReport {
        precision_bits,
        c0: bounds(&c.value),
        c0_width: c.value.width_f64(),
        critical_point: bounds(&c.critical_point),
        dirichlet,
    })
}

/// Grid `from + k (to - from)/n`, `k = 0..=n`, computed exactly and then
/// rounded, so that rows are reproducible bit for bit.
fn grid(from: &Rational, to: &Rational, n: usize) -> Vec<Rational> {
    let n_r = Rational::from_integer(n.into());
    (0..=n).map(|k| from + (to - from) * Rational::from_integer(k.into()) / &n_r).collect()
}

/// CSV of `ell, upper, lower, conjecture` for `ell` stepping by `step` over
/// `(from, to]`.
pub fn plot_bounds(from: &str, to: &str, step: &str, precision_bits: u32) -> CliResult<String> {
    let (from, to, step) = (parse_rational(from)?, parse_rational(to)?, parse_rational(step)?);
    if step <= Rational::from_integer(0.into()) || to <= from {
        return Err(CliError::usage("need step > 0 and to > from"));
    }
    let rows = ((&to - &from) / &step).floor().to_integer();
    let rows: usize = rows.try_into().map_err(|_| CliError::usage("too many rows"))?;
    if rows > 10_000_000 {
        return Err(CliError::usage("too many rows"));
    }
    let mut out = String::from("ell,upper,lower,conjecture\n");
    for k in 1..=rows {
        let ell = &from + &step * Rational::from_integer(k.into());
        if ell <= Rational::from_integer(0.into()) {
            continue;
        }
        let up = upper_bound_closed(&ell, precision_bits)?.mid_f64();
        let lo = to_f64(&lower_bound_closed(&ell)?);
        let e = to_f64(&ell);
        writeln!(out, "{e},{up},{lo},{e}").unwrap();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    /// `ghat = hhat * hhat`, supported on `[-1, 1]`.
    Ghat,
    /// `hhat = p` on `[-1/2, 1/2]`, zero outside.
    Hhat,
}

pub fn plot_transform(what: Transform, poly: &str, from: &str, to: &str, points: usize) -> CliResult<String> {
    let p = presets::resolve(poly)?;
    let (from, to) = (parse_rational(from)?, parse_rational(to)?);
    if points < 2 || to <= from {
        return Err(CliError::usage("need points >= 2 and to > from"));
    }
    let ac = autocorrelate(&p);
    let mut out = String::from("x,value\n");
    for x in grid(&from, &to, points - 1) {
        let xf = to_f64(&x);
        let v = match what {
            Transform::Ghat => ac.ghat_f64(xf),
            Transform::Hhat => {
                if xf.abs() <= 0.5 {
                    p.eval_f64(xf)
                } else {
                    0.0
                }
            }
        };
        writeln!(out, "{xf},{v}").unwrap();
    }
    Ok(out)
}
