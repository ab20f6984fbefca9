//! Derivative-free minimization in the style of Brent's principal-axis
//! method, and the multistart search over Krein factors built on it.
//!
//! Each sweep runs one line minimization per search direction, then one
//! along the net displacement of the sweep, which replaces the oldest
//! direction (Powell's conjugate-direction update). Every `n` sweeps the
//! directions are replaced by the principal axes of the quadratic model
//! assembled from the curvature estimates of the line searches. When a
//! sweep no longer moves the point, random directions are tried before
//! giving up, which matters for the kinked objectives used here.

pub mod line;
pub mod objective;

use nalgebra::DMatrix;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::constants::c0_enclosure;
use crate::error::{Error, Result};
use crate::exactpoly::EvenPolynomial;
use crate::functionals::{eval_functional, BoundCertificate, EvalConfig, FunctionalKind};
use crate::rational::{int, rationalize, to_f64};
use line::{line_minimize, LineResult};
use objective::FloatObjective;

/// Largest polynomial degree accepted by [`optimize_functional`].
pub const MAX_DEGREE: usize = 24;
/// Denominator cap when rounding float coefficients to rationals.
pub const RATIONAL_DENOMINATOR_CAP: u64 = 1_000_000;
/// Sweeps without movement, each followed by a failed random escape,
/// before the search stops.
const STALL_LIMIT: usize = 4;
/// How many of the best float candidates are rechecked exactly.
const CERTIFY_TOP: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Number of free variables; [`optimize_functional`] sets it from the degree.
    pub dimension: usize,
    pub step0: f64,
    /// Sweeps moving the point by less than `tol (1 + |x|)` count as stalled.
    pub tol: f64,
    /// Objective evaluations per start.
    pub max_evals: usize,
    pub seed: u64,
    /// Random starts, in addition to any seed polynomials.
    pub starts: usize,
    /// Objective value assigned to infeasible candidates.
    pub penalty: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            dimension: 1,
            step0: 0.25,
            tol: 1e-10,
            max_evals: 20_000,
            seed: 0,
            starts: 8,
            penalty: 1e6,
        }
    }
}

impl OptimizerConfig {
    fn check(&self) -> Result<()> {
        if !(self.tol > 0.0) || !(self.step0 > 0.0) || self.starts == 0 && self.dimension > 0 {
            return Err(Error::out_of_range("config", "need tol > 0, step0 > 0 and starts >= 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimizeResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    /// Best value after each sweep, starting with the value at `start`.
    pub sweep_values: Vec<f64>,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

struct Search<'a, F> {
    f: F,
    evals: usize,
    max_evals: usize,
    tol: f64,
    _marker: std::marker::PhantomData<&'a ()>,
}

impl<F: FnMut(&[f64]) -> f64> Search<'_, F> {
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evals += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }

    fn budget(&self) -> usize {
        self.max_evals.saturating_sub(self.evals)
    }

    /// Line minimization from `x` along `u`; moves `x` only on improvement.
    fn along(&mut self, x: &mut [f64], fx: &mut f64, u: &[f64], step: f64) -> Option<LineResult> {
        let budget = self.budget().min(400);
        if budget < 3 {
            return None;
        }
        let base = x.to_vec();
        let mut trial = base.clone();
        let mut phi = |t: f64| {
            for ((y, b), d) in trial.iter_mut().zip(&base).zip(u) {
                *y = b + t * d;
            }
            self.evals += 1;
            let v = (self.f)(&trial);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        let r = line_minimize(&mut phi, *fx, step, self.tol, budget);
        if r.value < *fx {
            for ((y, b), d) in x.iter_mut().zip(&base).zip(u) {
                *y = b + r.t * d;
            }
            *fx = r.value;
        }
        Some(r)
    }
}

/// Replaces the directions by the principal axes of `V diag(d)^(-1) V^T`.
fn principal_axes(dirs: &mut [Vec<f64>], curv: &mut [f64]) {
    let n = dirs.len();
    let mut known: Vec<f64> = curv.iter().copied().filter(|c| c.is_finite() && *c > 0.0).collect();
    known.sort_by(f64::total_cmp);
    let fallback = if known.is_empty() { 1.0 } else { known[known.len() / 2] };
    let dmax = known.last().copied().unwrap_or(fallback).max(fallback);
    let dmin = dmax * 1e-10;
    let d: Vec<f64> = curv
        .iter()
        .map(|&c| if c.is_finite() && c > 0.0 { c } else { fallback }.clamp(dmin, dmax))
        .collect();
    let m = DMatrix::from_fn(n, n, |i, j| dirs[j][i] / d[j].sqrt());
    let svd = m.svd(true, false);
    let Some(u) = svd.u else { return };
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| u[(i, j)]).collect();
        let nrm = norm(&col);
        if !(nrm > 0.0) || col.iter().any(|v| !v.is_finite()) {
            return;
        }
        dirs[j] = col.iter().map(|v| v / nrm).collect();
        let s = svd.singular_values[j];
        curv[j] = if s > 0.0 { 1.0 / (s * s) } else { fallback };
    }
}

/// Minimizes `objective` from `start`. Always returns the best point seen,
/// whose value never exceeds the value at `start`.
pub fn principal_axis_minimize<F: FnMut(&[f64]) -> f64>(objective: F, config: &OptimizerConfig, start: &[f64]) -> MinimizeResult {
    let n = start.len();
    assert!(n >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut s = Search { f: objective, evals: 0, max_evals: config.max_evals.max(1), tol: config.tol, _marker: Default::default() };
    let mut x = start.to_vec();
    let mut fx = s.eval(&x);
    let mut sweep_values = vec![fx];
    let mut dirs: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut curv = vec![0.0; n];
    let mut h = config.step0;
    let mut stalls = 0;
    let mut sweep = 0usize;
    while s.budget() > 0 {
        let x_old = x.clone();
        for i in 0..n {
            let u = dirs[i].clone();
            match s.along(&mut x, &mut fx, &u, h) {
                Some(r) => {
                    if let Some(c) = r.curvature {
                        curv[i] = c;
                    }
                }
                None => break,
            }
        }
        let disp: Vec<f64> = x.iter().zip(&x_old).map(|(a, b)| a - b).collect();
        let moved = norm(&disp);
        if n > 1 && moved > 0.0 {
            let u: Vec<f64> = disp.iter().map(|v| v / moved).collect();
            let c = s.along(&mut x, &mut fx, &u, moved).and_then(|r| r.curvature).unwrap_or(0.0);
            dirs.remove(0);
            curv.remove(0);
            dirs.push(u);
            curv.push(c);
        }
        sweep += 1;
        if n > 1 && sweep % n == 0 {
            principal_axes(&mut dirs, &mut curv);
        }
        let scale = 1.0 + norm(&x);
        let moved = norm(&x.iter().zip(&x_old).map(|(a, b)| a - b).collect::<Vec<_>>());
        if moved <= config.tol * scale {
            let before = x.clone();
            for _ in 0..n.max(2) {
                let mut u: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                let nu = norm(&u);
                if !(nu > 0.0) {
                    continue;
                }
                u.iter_mut().for_each(|v| *v /= nu);
                let step = h.max(1e3 * config.tol * scale);
                if s.along(&mut x, &mut fx, &u, step).is_none() {
                    break;
                }
            }
            let escaped = norm(&x.iter().zip(&before).map(|(a, b)| a - b).collect::<Vec<_>>());
            if escaped <= config.tol * scale {
                stalls += 1;
                if stalls >= STALL_LIMIT {
                    sweep_values.push(fx);
                    break;
                }
                h = (h * 0.1).max(10.0 * config.tol);
            } else {
                stalls = 0;
                h = (2.0 * escaped).clamp(10.0 * config.tol, config.step0);
            }
        } else {
            stalls = 0;
            h = (2.0 * moved).clamp(10.0 * config.tol, config.step0);
        }
        sweep_values.push(fx);
    }
    MinimizeResult { x, value: fx, evals: s.evals, sweep_values }
}

/// Result of [`optimize_functional`].
#[derive(Clone, Debug, PartialEq)]
pub struct OptimizationReport {
    pub kind: FunctionalKind,
    pub degree: usize,
    /// Coefficients of the certified polynomial, as floats.
    pub best_coeffs: Vec<f64>,
    /// Float objective at [`OptimizationReport::best_coeffs`].
    pub best_value: f64,
    pub certified: BoundCertificate,
    pub certified_poly: EvenPolynomial,
    pub evals_used: usize,
    /// Float functional value reached by each start (`None` if infeasible);
    /// seed polynomials first, then random starts.
    pub per_start_values: Vec<Option<f64>>,
}

/// Variables `b_k = a_k / (a_0 4^k)`, `k >= 1`, keep the constant term at 1 and
/// every coefficient at the scale of its contribution on `[-1/2, 1/2]`.
fn to_coeffs(b: &[f64]) -> Vec<f64> {
    std::iter::once(1.0).chain(b.iter().enumerate().map(|(i, v)| v * 4f64.powi(i as i32 + 1))).collect()
}

fn seed_start(p: &EvenPolynomial, k: usize) -> Result<Vec<f64>> {
    let c = p.even_coeffs();
    if c.len() > k {
        return Err(Error::out_of_range("seed_poly", "seed degree exceeds the search degree"));
    }
    let a0 = c.first().filter(|a| !a.is_zero()).ok_or_else(|| Error::out_of_range("seed_poly", "seed has zero constant term"))?;
    Ok((1..k)
        .map(|i| c.get(i).map_or(0.0, |a| to_f64(&(a / a0))) / 4f64.powi(i as i32))
        .collect())
}

fn rational_poly(a: &[f64]) -> EvenPolynomial {
    EvenPolynomial::new(
        a.iter()
            .enumerate()
            .map(|(i, &v)| if i == 0 { int(1) } else { rationalize(v, RATIONAL_DENOMINATOR_CAP) })
            .collect(),
    )
}

fn map_starts<T: Send, F: Fn(usize) -> T + Sync + Send>(count: usize, f: F) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// Seed of start `i`, decorrelated from the main seed by a splitmix step.
fn start_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Multistart search over even polynomials of the given degree, with an
/// exact recheck of the best candidates.
pub fn optimize_functional(
    kind: FunctionalKind,
    degree: usize,
    config: &OptimizerConfig,
    seed_polys: &[EvenPolynomial],
) -> Result<OptimizationReport> {
    if degree % 2 == 1 || degree > MAX_DEGREE {
        return Err(Error::out_of_range("degree", format!("need an even degree <= {MAX_DEGREE}, got {degree}")));
    }
    let eval_cfg = EvalConfig::default();
    let c0 = c0_enclosure(eval_cfg.precision_bits);
    let obj = FloatObjective::new(kind, degree, c0.mid_f64(), eval_cfg.m);
    let k = degree / 2 + 1;
    let dim = k - 1;
    let sign = if kind.is_upper() { 1.0 } else { -1.0 };

    if dim == 0 {
        let p = EvenPolynomial::one();
        let certified = eval_functional(kind, &p, &c0, &eval_cfg).map_err(|_| Error::NoFeasibleCandidate)?;
        let v = obj.value(&[1.0]);
        return Ok(OptimizationReport {
            kind,
            degree,
            best_coeffs: vec![1.0],
            best_value: v.unwrap_or(f64::NAN),
            certified,
            certified_poly: p,
            evals_used: 1,
            per_start_values: vec![v],
        });
    }
    let config = OptimizerConfig { dimension: dim, ..config.clone() };
    config.check()?;

    let mut starts: Vec<Vec<f64>> = seed_polys.iter().map(|p| seed_start(p, k)).collect::<Result<_>>()?;
    let n_seeded = starts.len();
    for i in 0..config.starts {
        let mut rng = ChaCha8Rng::seed_from_u64(start_seed(config.seed, n_seeded + i));
        starts.push((0..dim).map(|_| StandardNormal.sample(&mut rng)).collect());
    }
    let penalty = config.penalty;
    let runs = map_starts(starts.len(), |i| {
        let cfg = OptimizerConfig { seed: start_seed(config.seed, i), ..config.clone() };
        let f = |b: &[f64]| obj.value(&to_coeffs(b)).map_or(penalty, |v| sign * v);
        principal_axis_minimize(f, &cfg, &starts[i])
    });
    let evals_used = runs.iter().map(|r| r.evals).sum();
    let per_start_values: Vec<Option<f64>> = runs.iter().map(|r| obj.value(&to_coeffs(&r.x))).collect();

    // candidates: rounded optimizer outputs, and the seeds themselves
    let mut candidates: Vec<(f64, EvenPolynomial)> = Vec::new();
    for r in &runs {
        let p = rational_poly(&to_coeffs(&r.x));
        let a: Vec<f64> = p.even_coeffs().iter().map(to_f64).collect();
        let mut padded = a.clone();
        padded.resize(k, 0.0);
        if let Some(v) = obj.value(&padded) {
            candidates.push((v, p));
        }
    }
    for p in seed_polys {
        let mut a: Vec<f64> = p.even_coeffs().iter().map(to_f64).collect();
        a.resize(k, 0.0);
        if let Some(v) = obj.value(&a) {
            candidates.push((v, p.clone()));
        }
    }
    candidates.sort_by(|x, y| (sign * x.0).total_cmp(&(sign * y.0)));
    candidates.dedup_by(|x, y| x.1 == y.1);

    let mut best: Option<(BoundCertificate, EvenPolynomial, f64)> = None;
    let mut certified_count = 0;
    for (v, p) in candidates {
        if certified_count >= CERTIFY_TOP {
            break;
        }
        let Ok(cert) = eval_functional(kind, &p, &c0, &eval_cfg) else { continue };
        certified_count += 1;
        let better = match &best {
            None => true,
            Some((b, _, _)) => {
                let (x, y) = (cert.certified_bound.to_rational(), b.certified_bound.to_rational());
                if kind.is_upper() {
                    x < y
                } else {
                    x > y
                }
            }
        };
        if better {
            best = Some((cert, p, v));
        }
    }
    let (certified, certified_poly, best_value) = best.ok_or(Error::NoFeasibleCandidate)?;
    let mut best_coeffs: Vec<f64> = certified_poly.even_coeffs().iter().map(to_f64).collect();
    best_coeffs.resize(k, 0.0);
    Ok(OptimizationReport {
        kind,
        degree,
        best_coeffs,
        best_value,
        certified,
        certified_poly,
        evals_used,
        per_start_values,
    })
}

/// Runs [`optimize_functional`] over increasing degrees, seeding each with
/// the certified winner of the previous one.
pub fn optimize_ladder(
    kind: FunctionalKind,
    degrees: &[usize],
    config: &OptimizerConfig,
    seed_polys: &[EvenPolynomial],
) -> Result<Vec<OptimizationReport>> {
    let mut out: Vec<OptimizationReport> = Vec::new();
    for &d in degrees {
        let mut seeds: Vec<EvenPolynomial> =
            seed_polys.iter().filter(|p| p.degree().unwrap_or(0) <= d).cloned().collect();
        if let Some(prev) = out.last() {
            seeds.push(prev.certified_poly.clone());
        }
        out.push(optimize_functional(kind, d, config, &seeds)?);
    }
    Ok(out)
}
