//! Independent floating-point oracles shared by the integration tests.
#![allow(dead_code)]

use fopt_core::rational::to_f64;
use fopt_core::EvenPolynomial;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, rule: &[(f64, f64)], a: f64, b: f64) -> f64 {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    h * rule.iter().map(|(x, w)| w * f(c + h * x)).sum::<f64>()
}

/// Adaptive Gauss-Legendre: splits a panel until it agrees with the sum of
/// its halves to `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let rule = gauss_legendre(10);
    fn go<F: Fn(f64) -> f64>(f: &F, rule: &[(f64, f64)], a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (l, r) = (gl_panel(f, rule, a, m), gl_panel(f, rule, m, b));
        if depth == 0 || (l + r - whole).abs() <= tol {
            l + r
        } else {
            go(f, rule, a, m, l, 0.5 * tol, depth - 1) + go(f, rule, m, b, r, 0.5 * tol, depth - 1)
        }
    }
    let whole = gl_panel(f, &rule, a, b);
    go(f, &rule, a, b, whole, tol, 30)
}

pub fn coeffs_f64(p: &EvenPolynomial) -> Vec<f64> {
    p.even_coeffs().iter().map(to_f64).collect()
}

/// `q(alpha) = integral_{alpha-1/2}^{1/2} p(t) p(t - alpha) dt` by quadrature.
pub fn q_quad(p: &EvenPolynomial, alpha: f64) -> f64 {
    if alpha.abs() >= 1.0 {
        return 0.0;
    }
    let a = alpha.abs();
    integrate(&|t| p.eval_f64(t) * p.eval_f64(t - a), a - 0.5, 0.5, 1e-14)
}

/// `(2 int_0^1 a q, 8 int_0^{1/2} a q, 4 int_{1/2}^1 q)` by nested quadrature.
pub fn moments_quad(p: &EvenPolynomial) -> (f64, f64, f64) {
    let tol = 1e-13;
    let m1 = 2.0 * integrate(&|a| a * q_quad(p, a), 0.0, 1.0, tol);
    let m2 = 8.0 * integrate(&|a| a * q_quad(p, a), 0.0, 0.5, tol);
    let m3 = 4.0 * integrate(&|a| q_quad(p, a), 0.5, 1.0, tol);
    (m1, m2, m3)
}

/// Extremes of `f` on a uniform grid of `n + 1` points over `[a, b]`.
pub fn grid_extremes<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..=n {
        let v = f(a + (b - a) * i as f64 / n as f64);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Even polynomial of degree at most `max_degree` with coefficients `k/8`,
/// `|k| <= 40`, and a non-zero constant term.
pub fn random_even_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> EvenPolynomial {
    let k = rng.random_range(0..=max_degree / 2) + 1;
    let mut c: Vec<fopt_core::Rational> = (0..k).map(|_| fopt_core::rational::rat(rng.random_range(-40..=40), 8)).collect();
    if c[0] == fopt_core::rational::int(0) {
        c[0] = fopt_core::rational::int(1);
    }
    EvenPolynomial::new(c)
}
