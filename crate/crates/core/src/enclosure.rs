//! Closed intervals `[lo, hi]` with dyadic endpoints and outward rounding.
//!
//! Every operation takes a working precision in bits; results are rounded
//! outward so that the true value is always contained. The elementary
//! functions (pi, sine/cosine, square and cube roots of rationals) needed
//! by the certification paths live here as well.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dyadic::{Dyadic, Rounding};
use crate::rational::Rational;

pub const DEFAULT_PRECISION: u32 = 128;

/// Environment variable overriding [`DEFAULT_PRECISION`].
pub const PRECISION_ENV: &str = "FOPT_PRECISION_BITS";

/// Working precision from `FOPT_PRECISION_BITS`, falling back to the default
/// when unset or unparsable; never below 64 bits.
pub fn precision_from_env() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .unwrap_or(DEFAULT_PRECISION)
        .max(64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: Dyadic,
    hi: Dyadic,
}

impl Enclosure {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "empty enclosure [{lo}, {hi}]");
        Enclosure { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn from_int(v: i64) -> Self {
        Enclosure::point(Dyadic::from_int(v))
    }

    pub fn zero() -> Self {
        Enclosure::from_int(0)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Enclosure {
            lo: Dyadic::from_rational(q, prec, Rounding::Floor),
            hi: Dyadic::from_rational(q, prec, Rounding::Ceil),
        }
    }

    /// Enclosure of the rational interval `[lo, hi]`.
    pub fn from_rational_bounds(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        assert!(lo <= hi);
        Enclosure {
            lo: Dyadic::from_rational(lo, prec, Rounding::Floor),
            hi: Dyadic::from_rational(hi, prec, Rounding::Ceil),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64_directed(Rounding::Ceil)
    }

    /// Exact midpoint.
    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// `(lo, hi)` as doubles, rounded outward.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (
            self.lo.to_f64_directed(Rounding::Floor),
            self.hi.to_f64_directed(Rounding::Ceil),
        )
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        let d = Dyadic::from_f64(x);
        self.lo <= d && d <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Enclosure of `max(a, b)` for `a` in `self`, `b` in `other`.
    pub fn max(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn min(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    /// Widen by `r >= 0` on both sides.
    pub fn inflate(&self, r: &Dyadic, prec: u32) -> Enclosure {
        Enclosure {
            lo: (&self.lo - r).round(prec, Rounding::Floor),
            hi: (&self.hi + r).round(prec, Rounding::Ceil),
        }
    }

    pub fn round(&self, prec: u32) -> Enclosure {
        Enclosure {
            lo: self.lo.round(prec, Rounding::Floor),
            hi: self.hi.round(prec, Rounding::Ceil),
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add(&self, o: &Enclosure, prec: u32) -> Enclosure {
        Enclosure {
            lo: (&self.lo + &o.lo).round(prec, Rounding::Floor),
            hi: (&self.hi + &o.hi).round(prec, Rounding::Ceil),
        }
    }

    pub fn sub(&self, o: &Enclosure, prec: u32) -> Enclosure {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Enclosure, prec: u32) -> Enclosure {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().unwrap();
        let hi = p.iter().max().unwrap();
        Enclosure {
            lo: lo.round(prec, Rounding::Floor),
            hi: hi.round(prec, Rounding::Ceil),
        }
    }

    /// `None` if the divisor contains zero.
    pub fn div(&self, o: &Enclosure, prec: u32) -> Option<Enclosure> {
        if o.contains_zero() {
            return None;
        }
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let l = a.div(b, prec, Rounding::Floor);
                let h = a.div(b, prec, Rounding::Ceil);
                lo = Some(match lo {
                    Some(x) => x.min(l),
                    None => l,
                });
                hi = Some(match hi {
                    Some(x) => x.max(h),
                    None => h,
                });
            }
        }
        Some(Enclosure { lo: lo.unwrap(), hi: hi.unwrap() })
    }

    pub fn mul_rational(&self, q: &Rational, prec: u32) -> Enclosure {
        self.mul(&Enclosure::from_rational(q, prec + 8), prec)
    }

    pub fn add_rational(&self, q: &Rational, prec: u32) -> Enclosure {
        self.add(&Enclosure::from_rational(q, prec + 8), prec)
    }

    pub fn abs_max(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }
}

impl std::fmt::Display for Enclosure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (lo, hi) = self.to_f64_bounds();
        write!(f, "[{lo:.17e}, {hi:.17e}]")
    }
}

// ---------------------------------------------------------------------------
// elementary functions

const PI_CACHE_BITS: u32 = 1100;

/// `atan(1/m)` by its alternating series.
fn atan_inv(m: i64, prec: u32) -> Enclosure {
    let wp = prec + 16;
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut sum = Enclosure::zero();
    let mut power = m.clone();
    let mut k: i64 = 0;
    let eps = Dyadic::new(BigInt::one(), -(wp as i64) - 4);
    loop {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * k + 1) * &power);
        let t = Enclosure::from_rational(&term, wp);
        sum = if k % 2 == 0 { sum.add(&t, wp) } else { sum.sub(&t, wp) };
        if t.hi() < &eps {
            // alternating with decreasing terms: remainder below the last term
            sum = sum.inflate(t.hi(), wp);
            break;
        }
        power *= &m2;
        k += 1;
    }
    sum.round(prec)
}

fn compute_pi(prec: u32) -> Enclosure {
    let wp = prec + 8;
    let a = atan_inv(5, wp).mul(&Enclosure::from_int(16), wp);
    let b = atan_inv(239, wp).mul(&Enclosure::from_int(4), wp);
    a.sub(&b, wp).round(prec)
}

/// Enclosure of pi.
pub fn pi(prec: u32) -> Enclosure {
    static CACHE: OnceLock<Enclosure> = OnceLock::new();
    if prec <= PI_CACHE_BITS - 20 {
        CACHE.get_or_init(|| compute_pi(PI_CACHE_BITS)).round(prec)
    } else {
        compute_pi(prec)
    }
}

/// Taylor series for (sin y, cos y) at a point with |y| <= 1.
fn sin_cos_small(y: &Dyadic, wp: u32) -> (Enclosure, Enclosure) {
    debug_assert!(y.abs() <= Dyadic::one());
    let y2 = Enclosure::point(y * y).round(wp);
    let eps = Dyadic::new(BigInt::one(), -(wp as i64) - 4);

    let series = |first: Enclosure, offset: i64| {
        let mut term = first;
        let mut sum = term.clone();
        let mut j: i64 = 1;
        loop {
            let d = (2 * j + offset - 1) * (2 * j + offset);
            term = term
                .mul(&y2, wp)
                .div(&Enclosure::from_int(d), wp)
                .expect("positive divisor")
                .neg();
            sum = sum.add(&term, wp);
            if term.abs_max() < eps {
                // Lagrange remainder is bounded by the next term, itself below |term|
                return sum.inflate(&term.abs_max(), wp);
            }
            j += 1;
        }
    };
    let sin = series(Enclosure::point(y.clone()), 1);
    let cos = series(Enclosure::from_int(1), 0);
    (sin, cos)
}

/// Enclosures of `(sin x, cos x)` for every `x` in the enclosure.
pub fn sin_cos(x: &Enclosure, prec: u32) -> (Enclosure, Enclosure) {
    let wp = prec + 20;
    let m = x.mid().round(wp + 8, Rounding::Floor);
    let rad = (&x.hi - &m).max(&m - &x.lo);
    let (s, c) = sin_cos_point(&m, wp);
    // both functions are 1-Lipschitz
    (s.inflate(&rad, wp).round(prec), c.inflate(&rad, wp).round(prec))
}

fn sin_cos_point(m: &Dyadic, wp: u32) -> (Enclosure, Enclosure) {
    let approx = m.to_f64();
    assert!(approx.abs() < 1e12, "argument {approx} too large for reduction");
    let k = (approx / std::f64::consts::FRAC_PI_2).round() as i64;
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let half_pi = pi(wp + kbits + 8).mul(&Enclosure::point(Dyadic::new(BigInt::one(), -1)), wp + kbits + 8);
    let r = Enclosure::point(m.clone()).sub(&half_pi.mul(&Enclosure::from_int(k), wp + kbits + 8), wp + 8);
    let rm = r.mid().round(wp + 8, Rounding::Floor);
    let rad = (r.hi() - &rm).max(&rm - r.lo());
    let (s, c) = sin_cos_small(&rm, wp + 8);
    let (s, c) = (s.inflate(&rad, wp + 8), c.inflate(&rad, wp + 8));
    match k.rem_euclid(4) {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    }
}

pub fn sin(x: &Enclosure, prec: u32) -> Enclosure {
    sin_cos(x, prec).0
}

pub fn cos(x: &Enclosure, prec: u32) -> Enclosure {
    sin_cos(x, prec).1
}

/// Enclosure of `q^(1/n)` for rational `q >= 0`, `n` in {2, 3}.
fn root_rational(q: &Rational, n: u32, prec: u32) -> Enclosure {
    assert!(!q.is_negative(), "root of negative rational");
    if q.is_zero() {
        return Enclosure::zero();
    }
    // scale by 2^(n k) so the integer root has about prec bits
    let approx_bits = (q.numer().bits() as i64 - q.denom().bits() as i64) / n as i64;
    let k = (prec as i64 + 4 - approx_bits).max(0);
    let scaled = q * Rational::from_integer(BigInt::one() << ((n as i64 * k) as u64));
    let floor = scaled.floor().to_integer();
    let r = floor.nth_root(n);
    let lo = Dyadic::new(r.clone(), -k);
    let r_exact = (&r).pow(n) == floor && scaled.is_integer();
    let hi = if r_exact { lo.clone() } else { Dyadic::new(r + 1, -k) };
    Enclosure::new(lo, hi).round(prec)
}

pub fn sqrt_rational(q: &Rational, prec: u32) -> Enclosure {
    root_rational(q, 2, prec)
}

pub fn cbrt_rational(q: &Rational, prec: u32) -> Enclosure {
    root_rational(q, 3, prec)
}
