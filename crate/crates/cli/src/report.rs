//! Serializable report types. Intervals are `[lo, hi]` pairs of floats
//! rounded outward; exact rationals are `"num/den"` strings.

use fopt_core::praxis::OptimizationReport;
use fopt_core::rational::{format_rational, to_f64};
use fopt_core::triangles::{TriangleConfig, ValidationReport};
use fopt_core::{BoundCertificate, Enclosure, Rational};
use serde::{Deserialize, Serialize};

pub type Bounds = [f64; 2];

pub fn bounds(e: &Enclosure) -> Bounds {
    let (lo, hi) = e.to_f64_bounds();
    [lo, hi]
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub error: String,
    pub message: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ExactValue {
    pub exact: String,
    pub value: f64,
}

impl ExactValue {
    pub fn new(q: &Rational) -> Self {
        ExactValue { exact: format_rational(q), value: to_f64(q) }
    }
}

/// Numerator `constant + c0_coeff * c0`; `exact` when `c0_coeff = 0`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct NumeratorJson {
    pub exact: bool,
    pub constant: String,
    pub c0_coeff: String,
    pub enclosure: Bounds,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CertificateJson {
    pub problem: String,
    pub direction: String,
    pub numerator: NumeratorJson,
    pub denominator: Bounds,
    pub value: Bounds,
    /// The one-sided bound as a float rounded in the safe direction.
    pub certified_bound: f64,
    /// The same bound as an exact rational.
    pub certified_bound_exact: String,
}

impl CertificateJson {
    pub fn new(c: &BoundCertificate) -> Self {
        CertificateJson {
            problem: c.kind.name().into(),
            direction: c.kind.direction().as_str().into(),
            numerator: NumeratorJson {
                exact: c.numerator_exact.is_exact(),
                constant: format_rational(&c.numerator_exact.constant),
                c0_coeff: format_rational(&c.numerator_exact.c0_coeff),
                enclosure: bounds(&c.numerator),
            },
            denominator: bounds(&c.denominator),
            value: bounds(&c.value),
            certified_bound: c.certified_f64(),
            certified_bound_exact: format_rational(&c.certified_bound.to_rational()),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub poly: String,
    pub m: u32,
    pub precision_bits: u32,
    #[serde(flatten)]
    pub certificate: CertificateJson,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    /// What the checked statement is.
    pub anchor: String,
    pub claimed: String,
    /// `None` when the computation itself failed.
    pub computed: Option<Bounds>,
    pub pass: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

impl VerifyReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        VerifyReport { checks, all_pass }
    }

    pub fn table(&self) -> String {
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let cw = self.checks.iter().map(|c| c.claimed.len()).max().unwrap_or(7).max(7);
        let mut s = format!("{:<w$}  {:<cw$}  {:<43}  result\n", "check", "claimed", "computed");
        for c in &self.checks {
            let computed = match c.computed {
                Some([lo, hi]) => format!("[{lo:.15}, {hi:.15}]"),
                None => "error".into(),
            };
            s += &format!(
                "{:<w$}  {:<cw$}  {:<43}  {}\n",
                c.name,
                c.claimed,
                computed,
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
        s += &format!("all_pass: {}\n", self.all_pass);
        s
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct BumpJson {
    pub half_width: String,
    pub height_scale: String,
    pub center: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ValidationJson {
    pub feasible: bool,
    pub points_checked: usize,
    pub min_inside: Option<String>,
    pub max_inside: Option<String>,
    /// Witness and reason when infeasible.
    pub detail: Option<String>,
}

impl ValidationJson {
    pub fn new(v: Result<ValidationReport, fopt_core::Error>) -> Self {
        match v {
            Ok(r) => ValidationJson {
                feasible: true,
                points_checked: r.points_checked,
                min_inside: Some(format_rational(&r.min_inside)),
                max_inside: Some(format_rational(&r.max_inside)),
                detail: None,
            },
            Err(e) => ValidationJson { feasible: false, points_checked: 0, min_inside: None, max_inside: None, detail: Some(e.to_string()) },
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ConfigJson {
    pub side: String,
    pub delta: String,
    pub bumps: Vec<BumpJson>,
    pub distinct_half_widths: Vec<String>,
    /// Upper side: sum of rho; lower side: sum of `2 g(0) - rho`.
    pub objective: ExactValue,
    pub validation: ValidationJson,
}

impl ConfigJson {
    pub fn new(cfg: &TriangleConfig, validation: ValidationJson) -> Self {
        ConfigJson {
            side: side_name(cfg.side).into(),
            delta: format_rational(&cfg.delta),
            bumps: cfg
                .bumps
                .iter()
                .map(|b| BumpJson {
                    half_width: format_rational(&b.half_width),
                    height_scale: format_rational(&b.height_scale),
                    center: format_rational(&b.center),
                })
                .collect(),
            distinct_half_widths: cfg.distinct_half_widths().iter().map(format_rational).collect(),
            objective: ExactValue::new(&cfg.objective),
            validation,
        }
    }
}

pub fn side_name(s: fopt_core::triangles::Side) -> &'static str {
    match s {
        fopt_core::triangles::Side::Upper => "upper",
        fopt_core::triangles::Side::Lower => "lower",
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TriangleReport {
    pub ell: String,
    pub delta: Option<String>,
    /// Closed-form upper bound (an enclosure: involves a cube root for `l < 1`).
    pub upper: Option<Bounds>,
    pub lower: Option<ExactValue>,
    pub general_upper: Option<ExactValue>,
    /// Absent when `l < Delta`, where the general lower formula does not apply.
    pub general_lower: Option<ExactValue>,
    pub configs: Vec<ConfigJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct OptimizeJson {
    pub problem: String,
    pub degree: usize,
    pub starts: usize,
    pub seed: u64,
    pub best_coeffs: Vec<f64>,
    pub best_value: f64,
    pub certified_poly: String,
    pub certified: CertificateJson,
    pub evals_used: usize,
    /// Seed polynomials first, then random starts; `null` if infeasible.
    pub per_start_values: Vec<Option<f64>>,
}

impl OptimizeJson {
    pub fn new(r: &OptimizationReport, starts: usize, seed: u64) -> Self {
        OptimizeJson {
            problem: r.kind.name().into(),
            degree: r.degree,
            starts,
            seed,
            best_coeffs: r.best_coeffs.clone(),
            best_value: r.best_value,
            certified_poly: r.certified_poly.to_coeff_string(),
            certified: CertificateJson::new(&r.certified),
            evals_used: r.evals_used,
            per_start_values: r.per_start_values.clone(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DirichletJson {
    pub n: u32,
    pub m_n: Bounds,
    pub ratio: Bounds,
    pub argmin: f64,
    /// `n (m(n)/n - 2 c0)`, which stays bounded.
    pub scaled_gap: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ConstantsReport {
    pub precision_bits: u32,
    pub c0: Bounds,
    pub c0_width: f64,
    pub critical_point: Bounds,
    pub dirichlet: Vec<DirichletJson>,
}
