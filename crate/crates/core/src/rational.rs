//! Exact rationals, parsing and formatting helpers.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-157/1000"`, `"1.999999999"` or `"2.5e-3"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(n / d);
    }
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let mant: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut v = Rational::from_integer(mant);
    if scale >= 0 {
        v *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        v /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -v } else { v })
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    // BigRational::to_f64 handles huge numerators/denominators without overflow
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Fractional part `{x} = x - floor(x)`.
pub fn fract(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn positive_part(x: Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else {
        x
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via continued-fraction convergents and the final semiconvergent.
pub fn rationalize(x: f64, max_den: u64) -> Rational {
    assert!(x.is_finite(), "cannot rationalize {x}");
    let exact = crate::dyadic::Dyadic::from_f64(x).to_rational();
    if exact.denom() <= &BigInt::from(max_den) {
        return exact;
    }
    let max_den = BigInt::from(max_den);
    // convergents h/k
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > max_den {
            // largest semiconvergent that fits
            let t = (&max_den - &k0) / &k1;
            let hs = &t * &h1 + &h0;
            let ks = &t * &k1 + &k0;
            let conv = Rational::new(h1.clone(), k1.clone());
            let semi = Rational::new(hs, ks);
            return if (&semi - &exact).abs() < (&conv - &exact).abs() { semi } else { conv };
        }
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            return Rational::new(h1, k1);
        }
        rest = frac.recip();
    }
}
