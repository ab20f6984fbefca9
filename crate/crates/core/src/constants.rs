//! Certified enclosures of `c0 = min sin(x)/x` and of the Dirichlet kernel
//! minima `m(n) = min D_n`, `D_n(x) = sin((n + 1/2) x) / sin(x / 2)`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::dyadic::{Dyadic, Rounding};
use crate::enclosure::{self, Enclosure, DEFAULT_PRECISION};
use crate::praxis::line::fmin;
use crate::rational::rat;

/// `c0 = cos x*`, where `x*` is the root of `x cos x - sin x` in `(pi, 2 pi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C0Constant {
    pub critical_point: Enclosure,
    pub value: Enclosure,
    pub precision_bits: u32,
}

impl C0Constant {
    /// `sin(x*) / x*` over the critical-point enclosure; it must meet
    /// [`C0Constant::value`].
    pub fn sinc_at_critical_point(&self) -> Enclosure {
        let p = self.precision_bits;
        let s = enclosure::sin(&self.critical_point, p);
        s.div(&self.critical_point, p).expect("critical point is far from zero")
    }
}

fn stationarity(x: &Enclosure, prec: u32) -> Enclosure {
    let (s, c) = enclosure::sin_cos(x, prec);
    x.mul(&c, prec).sub(&s, prec)
}

/// Certified `c0` by bisection on `x cos x - sin x`, which is increasing on
/// `(pi, 2 pi)`.
pub fn compute_c0(precision_bits: u32) -> C0Constant {
    assert!(precision_bits >= 64, "precision below 64 bits");
    let wp = precision_bits + 24;
    let pi = enclosure::pi(wp);
    let mut a = pi.add_rational(&rat(1, 10), wp).hi().clone();
    let mut b = pi.mul(&Enclosure::from_int(2), wp).lo().clone();
    let target = Dyadic::new(BigInt::one(), -(precision_bits as i64) + 4);
    while &b - &a > target {
        let m = (&a + &b).mul_pow2(-1);
        let g = stationarity(&Enclosure::point(m.clone()), wp);
        if g.hi() < &Dyadic::zero() {
            a = m;
        } else if g.lo() > &Dyadic::zero() {
            b = m;
        } else {
            // the sign can no longer be resolved at this precision
            break;
        }
    }
    let x = Enclosure::new(a.clone(), b.clone());
    // cos is increasing on (pi, 2 pi); sin(t)/t >= c0 for every t
    let lo = enclosure::cos(&Enclosure::point(a), wp).lo().clone();
    let mid = x.mid();
    let sinc_mid = enclosure::sin(&Enclosure::point(mid.clone()), wp)
        .div(&Enclosure::point(mid), wp)
        .expect("nonzero");
    let hi = enclosure::cos(&Enclosure::point(b), wp).hi().clone().min(sinc_mid.hi().clone());
    C0Constant {
        critical_point: x.round(precision_bits),
        value: Enclosure::new(lo, hi).round(precision_bits),
        precision_bits,
    }
}

/// `c0` at [`DEFAULT_PRECISION`], computed once per process.
pub fn c0_default() -> &'static C0Constant {
    static C0: OnceLock<C0Constant> = OnceLock::new();
    C0.get_or_init(|| compute_c0(DEFAULT_PRECISION))
}

/// `c0` at the given precision, reusing the cached default when possible.
pub fn c0_enclosure(precision_bits: u32) -> Enclosure {
    if precision_bits == DEFAULT_PRECISION {
        c0_default().value.clone()
    } else {
        compute_c0(precision_bits).value
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirichletKernelMin {
    pub n: u32,
    pub m_n: Enclosure,
    /// `m(n) / n`.
    pub ratio: Enclosure,
    /// A point where the minimum is (approximately) attained.
    pub argmin: f64,
}

/// Floating-point `D_n(x)`.
pub fn dirichlet_f64(n: u32, x: f64) -> f64 {
    let h = n as f64 + 0.5;
    let c = (0.5 * x).sin();
    if c.abs() < 1e-300 {
        return 2.0 * n as f64 + 1.0;
    }
    (h * x).sin() / c
}

/// Enclosures of `D_n(x)` and `D_n'(x)` at a dyadic point of `(0, 2 pi)`.
fn dirichlet_enclosure(n: u32, x: &Dyadic, prec: u32) -> Option<(Enclosure, Enclosure)> {
    let h = Enclosure::point(Dyadic::new(BigInt::from(2 * n + 1), -1));
    let xe = Enclosure::point(x.clone());
    let (s, sc) = enclosure::sin_cos(&h.mul(&xe, prec), prec);
    let (c, cc) = enclosure::sin_cos(&Enclosure::point(x.mul_pow2(-1)), prec);
    let d = s.div(&c, prec)?;
    // D' = (h cos(hx) sin(x/2) - sin(hx) cos(x/2) / 2) / sin(x/2)^2
    let num = h.mul(&sc, prec).mul(&c, prec).sub(&s.mul(&cc, prec).mul(&Enclosure::point(Dyadic::new(BigInt::one(), -1)), prec), prec);
    let dd = num.div(&c.mul(&c, prec), prec)?;
    Some((d, dd))
}

/// Certified `m(n) = min_x D_n(x)`. By evenness and `2 pi` periodicity the
/// search runs over `[0, pi]`.
pub fn dirichlet_min(n: u32, precision_bits: u32) -> DirichletKernelMin {
    assert!(n >= 1, "n must be positive");
    let prec = precision_bits.max(64);
    let argmin = float_argmin(n);
    let (at_argmin, _) = dirichlet_enclosure(n, &Dyadic::from_f64(argmin), prec).expect("argmin away from 0");
    let hi = at_argmin.hi().clone();
    let hi_f = hi.to_f64();
    let eps = 1e-15 * hi_f.abs().max(1.0);
    let target = Dyadic::from_f64(hi_f - eps);
    // |D''| <= 2 sum k^2 from D = 1 + 2 sum cos(kx)
    let nn = n as i64;
    let m2 = Dyadic::from_int(nn * (nn + 1) * (2 * nn + 1) / 3);
    let pi = enclosure::pi(prec);
    let top = pi.hi().clone();

    let cells = 8 * (2 * n as usize + 1);
    let width = Dyadic::from_f64(top.to_f64() / cells as f64);
    let r0 = width.mul_pow2(-1);
    let mut stack: Vec<(Dyadic, Dyadic)> = (0..cells)
        .map(|i| (&(&width * &Dyadic::from_int(i as i64)) + &r0, r0.clone()))
        .collect();
    // the grid is only approximately aligned with pi; close the gap on the right
    let right_edge = &width * &Dyadic::from_int(cells as i64);
    if right_edge < top {
        let r = (&top - &right_edge).mul_pow2(-1);
        stack.push((&right_edge + &r, r));
    }
    let mut lo = hi.clone();
    let mut guard = 0usize;
    while let Some((c, r)) = stack.pop() {
        guard += 1;
        assert!(guard < 5_000_000, "branch and bound did not terminate");
        let bound = match dirichlet_enclosure(n, &c, prec) {
            Some((d, dd)) => {
                let lin = &dd.abs_max() * &r;
                let quad = (&(&m2 * &r) * &r).mul_pow2(-1);
                (&(d.lo() - &lin) - &quad).round(prec, Rounding::Floor)
            }
            None => Dyadic::from_int(i64::MIN / 4),
        };
        if bound >= target || r.to_f64() < 1e-30 {
            lo = lo.min(bound);
            continue;
        }
        let h = r.mul_pow2(-1);
        stack.push((&c - &h, h.clone()));
        stack.push((&c + &h, h));
    }
    let m_n = Enclosure::new(lo, hi);
    let ratio = m_n
        .div(&Enclosure::from_int(n as i64), prec)
        .expect("n > 0");
    DirichletKernelMin { n, m_n, ratio, argmin }
}

/// Minimizes `D_n` over each negative lobe of `(0, pi]` in floating point.
fn float_argmin(n: u32) -> f64 {
    let step = 2.0 * std::f64::consts::PI / (2 * n + 1) as f64;
    let mut best = (std::f64::consts::PI, dirichlet_f64(n, std::f64::consts::PI));
    let mut j = 1;
    loop {
        let a = (2 * j - 1) as f64 * step;
        if a >= std::f64::consts::PI {
            break;
        }
        let b = (2 * j) as f64 * step;
        let b = b.min(std::f64::consts::PI);
        let mut f = |x: f64| dirichlet_f64(n, x);
        let r = fmin(&mut f, a, b, 1e-13, 200);
        if r.value < best.1 {
            best = (r.t, r.value);
        }
        j += 1;
    }
    best.0
}
