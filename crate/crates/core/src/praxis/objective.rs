//! Fast floating-point evaluation of the functionals, used only to steer the
//! search. Numerators come from the exact bilinear form rounded to `f64`;
//! denominators from a Chebyshev-Lobatto scan of `[0, 1]` refined by a local
//! one-dimensional minimization.

use crate::exactpoly::{cross_correlate, PolyQ};
use crate::functionals::{bilinear_numerator_matrix, FunctionalKind};
use crate::praxis::line::fmin;
use crate::rational::{int, to_f64};

/// Number of Chebyshev-Lobatto intervals on `[0, 1]`.
pub const SCAN_INTERVALS: usize = 2048;

#[derive(Clone, Debug)]
pub struct FloatObjective {
    kind: FunctionalKind,
    k: usize,
    m: u32,
    /// `A + c0 B`, row-major `k x k`.
    form: Vec<f64>,
    /// Coefficients (in `alpha`) of the cross-correlation of `x^(2i)` and
    /// `x^(2j)`, for `i <= j`, at index `i * k + j`.
    basis: Vec<Vec<f64>>,
    /// `integral_{-1/2}^{1/2} x^(2i)`.
    mass: Vec<f64>,
    /// Scan nodes in `[0, 1/2]`, ascending; the other half is mirrored.
    nodes: Vec<f64>,
    qlen: usize,
}

impl FloatObjective {
    pub fn new(kind: FunctionalKind, degree: usize, c0: f64, m: u32) -> Self {
        let k = degree / 2 + 1;
        let form = bilinear_numerator_matrix(kind, degree).to_f64(c0);
        let mono = |i: usize| PolyQ::monomial(int(1), 2 * i);
        let mut basis = vec![Vec::new(); k * k];
        let qlen = 2 * degree + 2;
        for i in 0..k {
            for j in i..k {
                let x = cross_correlate(&mono(i), &mono(j));
                let mut c: Vec<f64> = x.coeffs().iter().map(to_f64).collect();
                c.resize(qlen, 0.0);
                basis[i * k + j] = c;
            }
        }
        let mass = (0..k).map(|i| 1.0 / ((2 * i + 1) as f64 * 4f64.powi(i as i32))).collect();
        let half = SCAN_INTERVALS / 2;
        let nodes = (0..=half)
            .map(|m| 0.5 * (1.0 - (std::f64::consts::PI * m as f64 / SCAN_INTERVALS as f64).cos()))
            .collect();
        FloatObjective { kind, k, m, form: form.into_iter().flatten().collect(), basis, mass, nodes, qlen }
    }

    pub fn kind(&self) -> FunctionalKind {
        self.kind
    }

    /// Number of even coefficients `a_0..a_{d/2}`.
    pub fn num_coeffs(&self) -> usize {
        self.k
    }

    fn numerator(&self, a: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.k {
            let mut row = 0.0;
            for j in 0..self.k {
                row += self.form[i * self.k + j] * a[j];
            }
            acc += a[i] * row;
        }
        acc
    }

    fn g_at_zero(&self, a: &[f64]) -> f64 {
        let s: f64 = a.iter().zip(&self.mass).map(|(x, m)| x * m).sum();
        s * s
    }

    /// Coefficients of `q` in `alpha`.
    pub fn q_coeffs(&self, a: &[f64]) -> Vec<f64> {
        let mut q = vec![0.0; self.qlen];
        for i in 0..self.k {
            if a[i] == 0.0 {
                continue;
            }
            for j in i..self.k {
                let w = if i == j { a[i] * a[i] } else { 2.0 * a[i] * a[j] };
                if w == 0.0 {
                    continue;
                }
                for (qc, bc) in q.iter_mut().zip(&self.basis[i * self.k + j]) {
                    *qc += w * bc;
                }
            }
        }
        q
    }

    /// Float functional value, or `None` when the candidate is infeasible
    /// (vanishing denominator, or `g(0) = 0` for lower-bound kinds).
    pub fn value(&self, a: &[f64]) -> Option<f64> {
        assert_eq!(a.len(), self.k);
        if a.iter().any(|v| !v.is_finite()) {
            return None;
        }
        let q = self.q_coeffs(a);
        let q0 = q[0];
        if !(q0 > 0.0) {
            return None;
        }
        let horner = |x: f64| q.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let num = self.numerator(a);
        let den = match self.kind {
            FunctionalKind::Ep1 | FunctionalKind::Ep3 => {
                let s = |x: f64| horner(x) + horner(1.0 - x);
                let mut best = (0, f64::INFINITY);
                let mut sign = 0.0;
                for (i, &x) in self.nodes.iter().enumerate() {
                    let v = s(x);
                    if sign == 0.0 {
                        sign = v.signum();
                    } else if v.signum() != sign && v != 0.0 {
                        return None;
                    }
                    if v.abs() < best.1 {
                        best = (i, v.abs());
                    }
                }
                let refined = self.refine(best.0, |x| s(x).abs()).min(best.1);
                if !(refined > 1e-12 * q0) {
                    return None;
                }
                if self.kind == FunctionalKind::Ep3 {
                    2.0 * refined
                } else {
                    refined
                }
            }
            _ => {
                if !(self.g_at_zero(a) > 1e-14 * q0) {
                    return None;
                }
                if matches!(self.kind, FunctionalKind::J1A1 | FunctionalKind::J2A1) && self.m == 0 {
                    let t = |x: f64| horner(x).abs().max(horner(1.0 - x).abs());
                    self.scan_max(t)
                } else {
                    let t = |x: f64| horner(x).abs() + horner(1.0 - x).abs();
                    self.scan_max(t)
                }
            }
        };
        let v = num / den;
        v.is_finite().then_some(v)
    }

    fn scan_max<F: Fn(f64) -> f64>(&self, t: F) -> f64 {
        let mut best = (0, f64::NEG_INFINITY);
        for (i, &x) in self.nodes.iter().enumerate() {
            let v = t(x);
            if v > best.1 {
                best = (i, v);
            }
        }
        (-self.refine(best.0, |x| -t(x))).max(best.1)
    }

    /// Minimizes `f` between the scan neighbours of node `i`.
    fn refine<F: Fn(f64) -> f64>(&self, i: usize, f: F) -> f64 {
        let lo = self.nodes[i.saturating_sub(1)];
        let hi = self.nodes[(i + 1).min(self.nodes.len() - 1)];
        if hi <= lo {
            return f(lo);
        }
        let mut g = |x: f64| f(x);
        fmin(&mut g, lo, hi, 1e-13, 60).value
    }
}
