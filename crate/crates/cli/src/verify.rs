//! The reproduction battery behind `fopt verify`.
//!
//! The four named polynomials are inputs so that tests can tamper with them
//! and watch the corresponding check fail.

use fopt_core::constants::{c0_enclosure, compute_c0, dirichlet_min};
use fopt_core::rational::{int, rat, to_f64};
use fopt_core::triangles::{lower_bound_closed, lower_branches, lower_crossover, upper_bound_closed};
use fopt_core::{eval_functional, presets, EvalConfig, EvenPolynomial, FunctionalKind, Rational};

use crate::report::{bounds, Check, VerifyReport};

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyInputs {
    pub p1: EvenPolynomial,
    pub p2: EvenPolynomial,
    pub p3: EvenPolynomial,
    pub q2: EvenPolynomial,
}

impl Default for VerifyInputs {
    fn default() -> Self {
        VerifyInputs { p1: presets::p1(), p2: presets::p2(), p3: presets::p3(), q2: presets::q2() }
    }
}

pub const DIRICHLET_ORDERS: [u32; 5] = [5, 10, 50, 100, 200];

pub fn run(inputs: &VerifyInputs, precision_bits: u32) -> VerifyReport {
    let prec = precision_bits;
    let c0 = c0_enclosure(prec);
    let cfg = EvalConfig { precision_bits: prec, ..EvalConfig::default() };
    let mut checks = Vec::new();

    let bound_checks: [(&str, &str, FunctionalKind, &EvenPolynomial, Rational); 6] = [
        ("ep3_p1", "upper bound for the EP3 constant from p1", FunctionalKind::Ep3, &inputs.p1, rat(1_077_542, 1_000_000)),
        ("ep4_p2", "lower bound for the EP4 constant from 5 - x^2", FunctionalKind::Ep4, &inputs.p2, rat(982_144, 1_000_000)),
        ("ep1_p3", "upper bound for the EP1 constant from p3", FunctionalKind::Ep1, &inputs.p3, rat(1_330_144, 1_000_000)),
        ("ep2_q2", "lower bound for the EP2 constant from 250/47 - x^2", FunctionalKind::Ep2, &inputs.q2, rat(927_819, 1_000_000)),
        ("ep1_p3_beats_1.330174", "improvement on the earlier upper bound 1.330174", FunctionalKind::Ep1, &inputs.p3, rat(1_330_174, 1_000_000)),
        ("ep2_q2_beats_0.927818", "improvement on the earlier lower bound 0.927818", FunctionalKind::Ep2, &inputs.q2, rat(927_818, 1_000_000)),
    ];
    for (name, anchor, kind, p, claim) in bound_checks {
        let rel = if kind.is_upper() { "<" } else { ">" };
        let (computed, pass) = match eval_functional(kind, p, &c0, &cfg) {
            Ok(cert) => (Some(bounds(&cert.value)), cert.proves(&claim)),
            Err(_) => (None, false),
        };
        checks.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            claimed: format!("{rel} {}", to_f64(&claim)),
            computed,
            pass,
        });
    }

    // triangle candidate p = 1
    let one = EvenPolynomial::one();
    let exact = |k: FunctionalKind, v: &Rational| {
        let c = eval_functional(k, &one, &c0, &cfg).expect("constant polynomial is admissible");
        (bounds(&c.value), c.value.contains_rational(v) && c.value.width_f64() < 1e-25)
    };
    let (v, ok) = exact(FunctionalKind::Ep3, &rat(13, 12));
    checks.push(Check { name: "triangle_ep3".into(), anchor: "EP3 at p = 1".into(), claimed: "= 13/12".into(), computed: Some(v), pass: ok });
    let (v, ok) = exact(FunctionalKind::Ep1, &rat(4, 3));
    checks.push(Check { name: "triangle_ep1".into(), anchor: "EP1 at p = 1".into(), claimed: "= 4/3".into(), computed: Some(v), pass: ok });
    for (name, kind, denom, lo, hi) in [
        ("triangle_ep4", FunctionalKind::Ep4, 12, 0.981897, 0.981898),
        ("triangle_ep2", FunctionalKind::Ep2, 3, 0.92758, 0.92759),
    ] {
        let c = eval_functional(kind, &one, &c0, &cfg).expect("constant polynomial is admissible");
        let want = c0.mul_rational(&rat(1, denom), prec).add_rational(&int(1), prec);
        let v = bounds(&c.value);
        checks.push(Check {
            name: name.into(),
            anchor: format!("{} at p = 1", kind.name().to_uppercase()),
            claimed: format!("= 1 + c0/{denom} in ({lo}, {hi})"),
            computed: Some(v),
            pass: c.value.intersects(&want) && v[0] > lo && v[1] < hi,
        });
    }

    let c = compute_c0(prec);
    let v = bounds(&c.value);
    checks.push(Check {
        name: "c0_digits".into(),
        anchor: "minimum of sin x / x".into(),
        claimed: "-0.2172336282...".into(),
        computed: Some(v),
        pass: c.value.width_f64() <= 1e-11 && v[0] > -0.217_233_628_3 && v[1] < -0.217_233_628_2,
    });

    let m1 = dirichlet_min(1, prec);
    checks.push(Check {
        name: "dirichlet_m1".into(),
        anchor: "minimum of 1 + 2 cos x".into(),
        claimed: "= -1".into(),
        computed: Some(bounds(&m1.m_n)),
        pass: (m1.m_n.mid_f64() + 1.0).abs() <= 1e-9,
    });
    let two_c0 = 2.0 * c.value.mid_f64();
    let worst = DIRICHLET_ORDERS
        .iter()
        .map(|&n| n as f64 * (dirichlet_min(n, prec).ratio.mid_f64() - two_c0).abs())
        .fold(0.0, f64::max);
    checks.push(Check {
        name: "dirichlet_rate".into(),
        anchor: "m(n)/n tends to 2 c0 at rate 1/n".into(),
        claimed: "n |m(n)/n - 2 c0| <= 3 for n in 5, 10, 50, 100, 200".into(),
        computed: Some([worst, worst]),
        pass: worst <= 3.0,
    });

    let up2 = upper_bound_closed(&int(2), prec).expect("ell > 0");
    let lo2 = lower_bound_closed(&int(2)).expect("ell > 0");
    checks.push(Check {
        name: "closed_forms_at_2".into(),
        anchor: "closed-form triangle bounds at l = 2".into(),
        claimed: "C+(2) = 7/2, C-(2) = 2/3".into(),
        computed: Some([to_f64(&lo2), up2.mid_f64()]),
        pass: up2.contains_rational(&rat(7, 2)) && lo2 == rat(2, 3),
    });

    let eps = rat(1, 1 << 50);
    let mut jump: f64 = 0.0;
    for s in [1, 2, 4, 6] {
        let (a, b) = (int(s) - &eps, int(s) + &eps);
        let du = upper_bound_closed(&b, prec).expect("ell > 0").mid_f64() - upper_bound_closed(&a, prec).expect("ell > 0").mid_f64();
        let dl = to_f64(&(lower_bound_closed(&b).expect("ell > 0") - lower_bound_closed(&a).expect("ell > 0")));
        jump = jump.max(du.abs()).max(dl.abs());
    }
    let (l1, _) = lower_crossover();
    let (three, single) = lower_branches(&l1);
    jump = jump.max(to_f64(&(three - single)).abs());
    checks.push(Check {
        name: "closed_form_seams".into(),
        anchor: "continuity at l = 1, 2, 4, 6 and at the crossover l1".into(),
        claimed: "jump <= 1e-9".into(),
        computed: Some([0.0, jump]),
        pass: jump <= 1e-9,
    });

    VerifyReport::new(checks)
}
