//! Binary floating-point numbers of arbitrary precision, `mantissa * 2^exponent`.
//!
//! Arithmetic on [`Dyadic`] values is exact (`+`, `-`, `*`); precision is only
//! lost through the explicit rounding entry points, each of which takes a
//! [`Rounding`] direction. This is the substrate for [`crate::Enclosure`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Direction of rounding when a value has to be shortened.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Towards negative infinity.
    Floor,
    /// Towards positive infinity.
    Ceil,
}

impl Rounding {
    pub fn flip(self) -> Self {
        match self {
            Rounding::Floor => Rounding::Ceil,
            Rounding::Ceil => Rounding::Floor,
        }
    }
}

/// `mantissa * 2^exponent`, normalized so that the mantissa is odd (or zero
/// with exponent zero). Normalization makes structural equality numeric
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

fn floor_shr(m: &BigInt, shift: u64) -> BigInt {
    // num-bigint's `>>` on negative values rounds toward -inf, but make it explicit.
    let (q, _) = m.div_mod_floor(&(BigInt::one() << shift));
    q
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite value {v}");
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        if let Some(tz) = self.mantissa.trailing_zeros() {
            if tz > 0 {
                self.mantissa >>= tz;
                self.exponent += tz as i64;
            }
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Number of significant bits of the mantissa.
    pub fn precision(&self) -> u64 {
        self.mantissa.bits()
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + k }
    }

    /// Round to at most `prec` significant bits.
    pub fn round(&self, prec: u32, dir: Rounding) -> Self {
        let bits = self.mantissa.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let m = match dir {
            Rounding::Floor => floor_shr(&self.mantissa, shift),
            Rounding::Ceil => -floor_shr(&(-&self.mantissa), shift),
        };
        Dyadic::new(m, self.exponent + shift as i64)
    }

    /// Round a rational to `prec` significant bits in the given direction.
    pub fn from_rational(q: &Rational, prec: u32, dir: Rounding) -> Self {
        let num = q.numer();
        let den = q.denom();
        if num.is_zero() {
            return Dyadic::zero();
        }
        if den.is_one() {
            return Dyadic::new(num.clone(), 0).round(prec, dir);
        }
        // scale so the integer quotient carries prec + 2 bits
        let k = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (n, d) = if k >= 0 {
            (num << (k as u64), den.clone())
        } else {
            (num.clone(), den << ((-k) as u64))
        };
        let (q, r) = n.div_mod_floor(&d);
        let m = match dir {
            Rounding::Floor => q,
            Rounding::Ceil => {
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            }
        };
        Dyadic::new(m, -k).round(prec, dir)
    }

    /// `self / other` rounded to `prec` bits; panics if `other` is zero.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Rounding) -> Self {
        assert!(!other.is_zero(), "division by zero");
        let q = Rational::new(
            self.mantissa.clone() * pow2_big(self.exponent.max(0) - other.exponent.min(0)),
            other.mantissa.clone() * pow2_big(other.exponent.max(0) - self.exponent.min(0)),
        );
        Dyadic::from_rational(&q, prec, dir)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << (self.exponent as u64))
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << ((-self.exponent) as u64))
        }
    }

    /// Nearest-ish `f64` (no directional guarantee).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = floor_shr(&self.mantissa, shift as u64).to_f64().unwrap_or(f64::NAN);
        // two half-steps so that neither factor underflows or overflows early
        let e = (self.exponent + shift).clamp(-2200, 2200) as i32;
        let h = e / 2;
        m * 2f64.powi(h) * 2f64.powi(e - h)
    }

    /// Largest `f64` not above the value (or smallest not below, for `Ceil`).
    pub fn to_f64_directed(&self, dir: Rounding) -> f64 {
        let approx = self.to_f64();
        if !approx.is_finite() {
            return approx;
        }
        let exact = self.to_rational();
        let mut v = approx;
        // at most a couple of ulps away from the nearest double
        for _ in 0..4 {
            let back = Dyadic::from_f64(v).to_rational();
            match (dir, back.cmp(&exact)) {
                (Rounding::Floor, Ordering::Greater) => v = v.next_down(),
                (Rounding::Ceil, Ordering::Less) => v = v.next_up(),
                _ => break,
            }
        }
        v
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

fn pow2_big(k: i64) -> BigInt {
    BigInt::one() << (k.max(0) as u64)
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = align(self, other);
        a.cmp(&b)
    }
}

fn align(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt) {
    let e = a.exponent.min(b.exponent);
    (
        &a.mantissa << ((a.exponent - e) as u64),
        &b.mantissa << ((b.exponent - e) as u64),
    )
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let (a, b) = align(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}
