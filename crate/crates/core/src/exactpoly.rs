//! Exact univariate polynomials over the rationals, the even Krein factor
//! `p` and its autocorrelation `q(alpha) = ghat(alpha)` on `[0, 1]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, rat, Rational};

/// Dense polynomial, coefficients in ascending powers. Trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        PolyQ::new(v)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        PolyQ::monomial(Rational::one(), 1)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        PolyQ::new(c.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(crate::rational::to_f64).collect()
    }

    pub fn derivative(&self) -> Self {
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Self {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            v.push(c / Rational::from_integer(BigInt::from(k + 1)));
        }
        PolyQ::new(v)
    }

    /// Exact `integral_a^b self`.
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Rational {
        let f = self.antiderivative();
        f.eval(b) - f.eval(a)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyQ::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `self(a t + b)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let lin = PolyQ::new(vec![b.clone(), a.clone()]);
        let mut acc = PolyQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &PolyQ::constant(c.clone());
        }
        acc
    }

    /// `self(t - by)`.
    pub fn shift(&self, by: &Rational) -> Self {
        self.compose_affine(&Rational::one(), &-by)
    }

    /// `self(1 - t)`.
    pub fn reflect(&self) -> Self {
        self.compose_affine(&-Rational::one(), &Rational::one())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (PolyQ::new(quot), PolyQ::new(rem))
    }

    /// Positive rational multiple with coprime integer coefficients. Keeps
    /// signs, so it is safe inside Sturm sequences.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        PolyQ::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => PolyQ::zero(),
        }
    }

    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn square_free(&self) -> PolyQ {
        if self.degree().unwrap_or(0) < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.primitive()
        } else {
            self.div_rem(&g).0.primitive()
        }
    }

    /// Upper bound on `sup |self^(k)|` over `[-r, r]`, from absolute coefficients.
    pub fn derivative_bound(&self, k: usize, r: &Rational) -> Rational {
        let mut d = self.clone();
        for _ in 0..k {
            d = d.derivative();
        }
        let mut acc = Rational::zero();
        for c in d.coeffs.iter().rev() {
            acc = acc * r + c.abs();
        }
        acc
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        self + &(-rhs)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PolyQ::new(v)
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = format_rational(&c.abs());
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*x")?,
                _ => write!(f, "{a}*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Even polynomial `sum_k a_k x^(2k)`, the Krein factor with
/// `hhat = p * indicator([-1/2, 1/2])`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct EvenPolynomial {
    even_coeffs: Vec<Rational>,
}

impl EvenPolynomial {
    pub fn new(mut even_coeffs: Vec<Rational>) -> Self {
        while even_coeffs.last().is_some_and(Zero::is_zero) {
            even_coeffs.pop();
        }
        EvenPolynomial { even_coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        EvenPolynomial::new(c.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
    }

    pub fn one() -> Self {
        EvenPolynomial::from_ints(&[1])
    }

    /// Coefficient of `x^(2k)` at index `k`.
    pub fn even_coeffs(&self) -> &[Rational] {
        &self.even_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.even_coeffs.is_empty()
    }

    /// Degree in `x` (twice the index of the last coefficient).
    pub fn degree(&self) -> Option<usize> {
        self.even_coeffs.len().checked_sub(1).map(|k| 2 * k)
    }

    pub fn to_poly(&self) -> PolyQ {
        let mut v = vec![Rational::zero(); 2 * self.even_coeffs.len()];
        for (k, c) in self.even_coeffs.iter().enumerate() {
            v[2 * k] = c.clone();
        }
        PolyQ::new(v)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        EvenPolynomial::new(self.even_coeffs.iter().map(|x| x * c).collect())
    }

    /// Parses the comma-separated coefficient format, e.g. `"5,-1"` for `5 - x^2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Ok(EvenPolynomial::new(coeffs))
    }

    /// Inverse of [`EvenPolynomial::parse`]; `"0"` for the zero polynomial.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.even_coeffs.iter().map(format_rational).collect::<Vec<_>>().join(",")
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let x2 = x * x;
        self.even_coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x2 + crate::rational::to_f64(c))
    }
}

impl fmt::Display for EvenPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

/// `ghat` of `g = |h|^2` restricted to `[0, 1]` as an exact polynomial, plus
/// the two point values the functionals need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Autocorrelation {
    pub q: PolyQ,
    /// `g(0) = (integral_{-1/2}^{1/2} p)^2`.
    pub g_at_zero: Rational,
    /// `ghat(0) = q(0) = integral_{-1/2}^{1/2} p^2`.
    pub ghat_at_zero: Rational,
}

impl Autocorrelation {
    /// `ghat(x)` for any real `x`, using evenness and the support `[-1, 1]`.
    pub fn ghat_f64(&self, x: f64) -> f64 {
        let a = x.abs();
        if a >= 1.0 {
            0.0
        } else {
            self.q.eval_f64(a)
        }
    }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `integral_{alpha - 1/2}^{1/2} f(t) g(t - alpha) dt` as a polynomial in
/// `alpha`, exact for `alpha` in `[0, 1]`.
pub fn cross_correlate(f: &PolyQ, g: &PolyQ) -> PolyQ {
    if f.is_zero() || g.is_zero() {
        return PolyQ::zero();
    }
    let df = f.degree().unwrap();
    let dg = g.degree().unwrap();
    // bivariate[k] is the coefficient polynomial (in alpha) of t^k
    let mut bivariate = vec![vec![Rational::zero(); dg + 1]; df + dg + 1];
    for j in 0..=dg {
        let gj = g.coeff(j);
        if gj.is_zero() {
            continue;
        }
        let binom = binomial_row(j);
        for (i, fi) in f.coeffs().iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            let base = fi * &gj;
            // (t - alpha)^j = sum_m C(j, m) t^m (-alpha)^(j - m)
            for (m, c) in binom.iter().enumerate() {
                let l = j - m;
                let mut term = &base * Rational::from_integer(c.clone());
                if l % 2 == 1 {
                    term = -term;
                }
                bivariate[i + m][l] += term;
            }
        }
    }
    let half = rat(1, 2);
    let shifted = PolyQ::new(vec![-half.clone(), Rational::one()]); // alpha - 1/2
    let mut shifted_pow = shifted.clone(); // (alpha - 1/2)^(k+1)
    let mut half_pow = half.clone(); // (1/2)^(k+1)
    let mut q = PolyQ::zero();
    for (k, row) in bivariate.into_iter().enumerate() {
        let inner = PolyQ::new(row);
        if !inner.is_zero() {
            // integral_{alpha-1/2}^{1/2} t^k dt
            let prim = (&PolyQ::constant(half_pow.clone()) - &shifted_pow)
                .scale(&Rational::new(BigInt::one(), BigInt::from(k + 1)));
            q = &q + &(&inner * &prim);
        }
        shifted_pow = &shifted_pow * &shifted;
        half_pow = &half_pow * &half;
    }
    q
}

/// Autocorrelation of the Krein factor `p`.
pub fn autocorrelate(p: &EvenPolynomial) -> Autocorrelation {
    let poly = p.to_poly();
    autocorrelate_poly(&poly)
}

/// Same as [`autocorrelate`] for an arbitrary (not necessarily even) factor.
pub fn autocorrelate_poly(poly: &PolyQ) -> Autocorrelation {
    let half = rat(1, 2);
    let q = cross_correlate(poly, poly);
    let mass = poly.integrate(&-half.clone(), &half);
    Autocorrelation {
        ghat_at_zero: q.coeff(0),
        g_at_zero: &mass * &mass,
        q,
    }
}

/// The three exact weighted integrals of `q` entering the numerators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSet {
    /// `2 integral_0^1 alpha q`.
    pub m1: Rational,
    /// `8 integral_0^{1/2} alpha q`.
    pub m2: Rational,
    /// `4 integral_{1/2}^1 q`.
    pub m3: Rational,
}

pub fn weighted_moments(ac: &Autocorrelation) -> MomentSet {
    let zero = Rational::zero();
    let half = rat(1, 2);
    let one = Rational::one();
    let alpha_q = &ac.q * &PolyQ::x();
    MomentSet {
        m1: alpha_q.integrate(&zero, &one) * Rational::from_integer(2.into()),
        m2: alpha_q.integrate(&zero, &half) * Rational::from_integer(8.into()),
        m3: ac.q.integrate(&half, &one) * Rational::from_integer(4.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn arithmetic_examples() {
        let a = PolyQ::from_ints(&[1, 1]);
        let b = PolyQ::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, PolyQ::from_ints(&[-1, 0, 1]));
        let p = PolyQ::from_ints(&[5, 0, -1]);
        assert_eq!(p.eval(&rat(1, 2)), rat(19, 4));
        let t2 = PolyQ::from_ints(&[0, 0, 1]);
        assert_eq!(t2.shift(&int(1)).eval(&int(0)), int(1));
        assert_eq!(&a - &a, PolyQ::zero());
        assert_eq!(&a + &b, PolyQ::from_ints(&[0, 2]));
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2)
        let f = &(&PolyQ::from_ints(&[-1, 1]) * &PolyQ::from_ints(&[-1, 1])) * &PolyQ::from_ints(&[2, 1]);
        let (q, r) = f.div_rem(&PolyQ::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, PolyQ::from_ints(&[-2, 1, 1]));
        assert_eq!(f.gcd(&f.derivative()), PolyQ::from_ints(&[-1, 1]));
        assert_eq!(f.square_free(), PolyQ::from_ints(&[-2, 1, 1]));
    }

    #[test]
    fn box_autocorrelation_is_triangle() {
        let ac = autocorrelate(&EvenPolynomial::one());
        assert_eq!(ac.q, PolyQ::from_ints(&[1, -1]));
        assert_eq!(ac.g_at_zero, int(1));
        assert_eq!(ac.ghat_at_zero, int(1));
        let m = weighted_moments(&ac);
        assert_eq!((m.m1, m.m2, m.m3), (rat(1, 3), rat(2, 3), rat(1, 2)));
    }

    #[test]
    fn odd_factor_through_poly_backdoor() {
        let ac = autocorrelate_poly(&PolyQ::x());
        assert_eq!(ac.q, PolyQ::new(vec![rat(1, 12), rat(-1, 4), int(0), rat(1, 6)]));
        assert_eq!(ac.q.eval(&int(1)), int(0));
        assert_eq!(ac.g_at_zero, int(0));
    }

    #[test]
    fn five_minus_x_squared() {
        let ac = autocorrelate(&EvenPolynomial::from_ints(&[5, -1]));
        assert_eq!(ac.ghat_at_zero, rat(5803, 240));
        assert_eq!(ac.q.eval(&int(1)), int(0));
        assert_eq!(ac.q.degree(), Some(5));
    }

    #[test]
    fn zero_is_total() {
        let ac = autocorrelate(&EvenPolynomial::default());
        assert!(ac.q.is_zero());
        let m = weighted_moments(&ac);
        assert!(m.m1.is_zero() && m.m2.is_zero() && m.m3.is_zero());
    }

    #[test]
    fn parse_and_format() {
        let p = EvenPolynomial::parse("1,-157/1000,69/10,-59,-152,815,200").unwrap();
        assert_eq!(p.degree(), Some(12));
        assert_eq!(p.to_coeff_string(), "1,-157/1000,69/10,-59,-152,815,200");
        assert!(EvenPolynomial::parse("0").unwrap().is_zero());
        assert!(EvenPolynomial::parse("1,x").is_err());
        assert_eq!(format!("{}", EvenPolynomial::from_ints(&[5, -1])), "5 - 1*x^2");
    }
}
