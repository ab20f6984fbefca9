//! One-dimensional minimization: Brent's golden-section search with
//! parabolic acceleration, and a bracketing line search built on it.

const GOLDEN: f64 = 0.381_966_011_250_105_1; // (3 - sqrt 5) / 2
const GROW: f64 = 1.618_033_988_749_895;

/// Result of a one-dimensional minimization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineResult {
    pub t: f64,
    pub value: f64,
    /// Second-difference estimate of the curvature along the line, if three
    /// distinct points were available and the estimate is finite.
    pub curvature: Option<f64>,
    pub evals: usize,
}

/// Minimizes `f` on `[a, b]` starting from an interior point `x0` with known
/// value `f0`. Stops when the bracket has shrunk to about `tol` around the
/// current best point or after `max_evals` evaluations.
pub fn fmin_from<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    x0: f64,
    f0: f64,
    tol: f64,
    max_evals: usize,
) -> LineResult {
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let eps = f64::EPSILON.sqrt();
    let (mut x, mut w, mut v) = (x0, x0, x0);
    let (mut fx, mut fw, mut fv) = (f0, f0, f0);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    let mut evals = 0;
    while evals < max_evals {
        let m = 0.5 * (a + b);
        let tol1 = eps * x.abs() + tol / 3.0;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            // parabola through x, w, v
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            } else {
                q = -q;
            }
            let r = e;
            e = d;
            // accept only a step inside the bracket and shorter than half the
            // step before last; otherwise the parabola disagrees with the
            // bracketing and a golden step is taken instead
            if p.abs() < (0.5 * q * r).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u);
        evals += 1;
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            (v, fv) = (w, fw);
            (w, fw) = (x, fx);
            (x, fx) = (u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv) = (w, fw);
                (w, fw) = (u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    LineResult { t: x, value: fx, curvature: curvature3(x, fx, w, fw, v, fv), evals }
}

/// Minimizes `f` on `[a, b]`, starting at the first golden-section point.
pub fn fmin<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, tol: f64, max_evals: usize) -> LineResult {
    let x0 = a + GOLDEN * (b - a);
    let f0 = f(x0);
    let mut r = fmin_from(f, a, b, x0, f0, tol, max_evals.saturating_sub(1));
    r.evals += 1;
    r
}

fn curvature3(x0: f64, f0: f64, x1: f64, f1: f64, x2: f64, f2: f64) -> Option<f64> {
    let (d1, d2, d12) = (x1 - x0, x2 - x0, x2 - x1);
    if d1 == 0.0 || d2 == 0.0 || d12 == 0.0 {
        return None;
    }
    let c = 2.0 * ((f2 - f0) / d2 - (f1 - f0) / d1) / d12;
    c.is_finite().then_some(c)
}

/// Minimizes `phi(t)` along a line, given `phi(0) = f0`. The bracket is
/// found by trying `+step` and `-step` and then expanding geometrically
/// downhill; the bracket is then handed to [`fmin_from`].
pub fn line_minimize<F: FnMut(f64) -> f64>(
    phi: &mut F,
    f0: f64,
    step: f64,
    tol: f64,
    max_evals: usize,
) -> LineResult {
    let mut evals = 0;
    let mut eval = |t: f64, evals: &mut usize| {
        *evals += 1;
        phi(t)
    };
    let step = if step.is_finite() && step != 0.0 { step.abs() } else { 1.0 };
    let f1 = eval(step, &mut evals);
    let (mut lo, mut mid, mut fmid, dir);
    if f1 < f0 {
        (lo, mid, fmid, dir) = (0.0, step, f1, 1.0);
    } else {
        let fm = eval(-step, &mut evals);
        if fm < f0 {
            (lo, mid, fmid, dir) = (0.0, -step, fm, -1.0);
        } else {
            // 0 is already bracketed
            let curv = curvature3(0.0, f0, step, f1, -step, fm);
            let budget = max_evals.saturating_sub(evals);
            let mut r = fmin_from(phi, -step, step, 0.0, f0, tol, budget);
            r.evals += evals;
            if r.curvature.is_none() {
                r.curvature = curv;
            }
            return r;
        }
    }
    // expand downhill until the function turns up
    let mut width = step;
    let hi = loop {
        if evals >= max_evals {
            return LineResult { t: mid, value: fmid, curvature: None, evals };
        }
        width *= GROW;
        let t = mid + dir * width;
        let ft = eval(t, &mut evals);
        if !(ft < fmid) {
            break t;
        }
        lo = mid;
        mid = t;
        fmid = ft;
        if width > 1e12 {
            return LineResult { t: mid, value: fmid, curvature: None, evals };
        }
    };
    let budget = max_evals.saturating_sub(evals);
    let mut r = fmin_from(phi, lo, hi, mid, fmid, tol, budget);
    r.evals += evals;
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmin_finds_parabola_vertex() {
        let mut f = |x: f64| (x - 0.3).powi(2) + 1.0;
        let r = fmin(&mut f, -2.0, 3.0, 1e-10, 200);
        assert!((r.t - 0.3).abs() < 1e-7);
        assert!((r.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fmin_handles_kinks() {
        let mut f = |x: f64| (x - 1.25).abs();
        let r = fmin(&mut f, 0.0, 4.0, 1e-10, 400);
        assert!((r.t - 1.25).abs() < 1e-8);
    }

    #[test]
    fn line_search_brackets_far_minimum() {
        let mut phi = |t: f64| (t - 37.0).powi(2);
        let r = line_minimize(&mut phi, 37.0f64.powi(2), 0.1, 1e-9, 500);
        assert!((r.t - 37.0).abs() < 1e-6, "{r:?}");
        let c = r.curvature.unwrap();
        assert!((c - 2.0).abs() < 1e-3, "{c}");
    }

    #[test]
    fn line_search_backwards() {
        let mut phi = |t: f64| (t + 2.5).powi(2);
        let r = line_minimize(&mut phi, 6.25, 1.0, 1e-9, 500);
        assert!((r.t + 2.5).abs() < 1e-6);
    }

    #[test]
    fn line_search_respects_budget() {
        let mut phi = |t: f64| -t;
        let r = line_minimize(&mut phi, 0.0, 1.0, 1e-9, 10);
        assert!(r.evals <= 10);
        assert!(r.value < 0.0);
    }
}
