//! The extremal functionals EP1 to EP4 and the support-`[-1, 1]`
//! restrictions of `J1`, `J2`, assembled from exact moments and certified
//! denominators.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::dyadic::Dyadic;
use crate::enclosure::{precision_from_env, Enclosure};
use crate::error::{Error, Result};
use crate::exactpoly::{autocorrelate, weighted_moments, Autocorrelation, EvenPolynomial};
use crate::extremize::{max_abs_pair_sum, min_abs_symmetric_sum, truncated_shift_sum_max};
use crate::rational::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionalKind {
    Ep1,
    Ep2,
    Ep3,
    Ep4,
    J1A1,
    J2A1,
}

/// Which side of the extremal constant a candidate bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// The constant is an infimum; every candidate gives an upper bound.
    UpperBoundInf,
    /// The constant is a supremum; every candidate gives a lower bound.
    LowerBoundSup,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::UpperBoundInf => "upper_bound_inf",
            Direction::LowerBoundSup => "lower_bound_sup",
        }
    }
}

impl FunctionalKind {
    pub const ALL: [FunctionalKind; 6] = [
        FunctionalKind::Ep1,
        FunctionalKind::Ep2,
        FunctionalKind::Ep3,
        FunctionalKind::Ep4,
        FunctionalKind::J1A1,
        FunctionalKind::J2A1,
    ];

    pub fn direction(self) -> Direction {
        match self {
            FunctionalKind::Ep1 | FunctionalKind::Ep3 => Direction::UpperBoundInf,
            _ => Direction::LowerBoundSup,
        }
    }

    pub fn is_upper(self) -> bool {
        self.direction() == Direction::UpperBoundInf
    }

    /// Short lowercase name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            FunctionalKind::Ep1 => "ep1",
            FunctionalKind::Ep2 => "ep2",
            FunctionalKind::Ep3 => "ep3",
            FunctionalKind::Ep4 => "ep4",
            FunctionalKind::J1A1 => "j1",
            FunctionalKind::J2A1 => "j2",
        }
    }
}

impl fmt::Display for FunctionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "ep1" => Ok(FunctionalKind::Ep1),
            "ep2" => Ok(FunctionalKind::Ep2),
            "ep3" => Ok(FunctionalKind::Ep3),
            "ep4" => Ok(FunctionalKind::Ep4),
            "j1" | "j1a1" => Ok(FunctionalKind::J1A1),
            "j2" | "j2a1" => Ok(FunctionalKind::J2A1),
            other => Err(Error::Parse(format!("unknown problem {other:?}"))),
        }
    }
}

/// `constant + c0 * c0_coeff`, with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineC0 {
    pub constant: Rational,
    pub c0_coeff: Rational,
}

impl AffineC0 {
    pub fn exact(constant: Rational) -> Self {
        AffineC0 { constant, c0_coeff: Rational::zero() }
    }

    pub fn is_exact(&self) -> bool {
        self.c0_coeff.is_zero()
    }

    pub fn eval(&self, c0: &Enclosure, prec: u32) -> Enclosure {
        let base = Enclosure::from_rational(&self.constant, prec + 8);
        if self.c0_coeff.is_zero() {
            return base.round(prec);
        }
        base.add(&c0.mul_rational(&self.c0_coeff, prec + 8), prec)
    }

    pub fn eval_f64(&self, c0: f64) -> f64 {
        crate::rational::to_f64(&self.constant) + c0 * crate::rational::to_f64(&self.c0_coeff)
    }
}

/// Exact numerator of `kind` at the Krein factor with autocorrelation `ac`.
pub fn numerator(kind: FunctionalKind, ac: &Autocorrelation) -> AffineC0 {
    let m = weighted_moments(ac);
    let q0 = &ac.ghat_at_zero;
    let g0 = &ac.g_at_zero;
    let plain = q0 + &m.m1;
    let split = q0 + &m.m2 + &m.m3;
    match kind {
        FunctionalKind::Ep1 => AffineC0::exact(plain),
        FunctionalKind::Ep3 => AffineC0::exact(split),
        // (1 - c0) g0 + c0 (q0 + M1)
        FunctionalKind::Ep2 | FunctionalKind::J1A1 => AffineC0 { constant: g0.clone(), c0_coeff: plain - g0 },
        // (1 - c0) g0 + (c0 / 2)(q0 + M2 + M3)
        FunctionalKind::Ep4 | FunctionalKind::J2A1 => AffineC0 { constant: g0.clone(), c0_coeff: split / int(2) - g0 },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Truncation `m` of the shifted sums in the `J` denominators.
    pub m: u32,
    pub precision_bits: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { m: 3, precision_bits: precision_from_env() }
    }
}

/// A one-sided certified value of a functional at one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub kind: FunctionalKind,
    pub numerator_exact: AffineC0,
    pub numerator: Enclosure,
    pub denominator: Enclosure,
    pub value: Enclosure,
    /// `value.hi` for upper-bound kinds, `value.lo` for lower-bound kinds.
    pub certified_bound: Dyadic,
}

impl BoundCertificate {
    pub fn certified_f64(&self) -> f64 {
        use crate::dyadic::Rounding;
        let dir = if self.kind.is_upper() { Rounding::Ceil } else { Rounding::Floor };
        self.certified_bound.to_f64_directed(dir)
    }

    /// Whether the certificate proves `constant < claim` (upper kinds) or
    /// `constant > claim` (lower kinds), with `claim` an exact rational.
    pub fn proves(&self, claim: &Rational) -> bool {
        let b = self.certified_bound.to_rational();
        if self.kind.is_upper() {
            &b < claim
        } else {
            &b > claim
        }
    }
}

/// Certified value of `kind` at the Krein factor `p`.
pub fn eval_functional(
    kind: FunctionalKind,
    p: &EvenPolynomial,
    c0: &Enclosure,
    config: &EvalConfig,
) -> Result<BoundCertificate> {
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let ac = autocorrelate(p);
    eval_autocorrelation(kind, &ac, c0, config)
}

/// As [`eval_functional`], from a precomputed autocorrelation.
pub fn eval_autocorrelation(
    kind: FunctionalKind,
    ac: &Autocorrelation,
    c0: &Enclosure,
    config: &EvalConfig,
) -> Result<BoundCertificate> {
    let prec = config.precision_bits;
    if ac.q.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    if !kind.is_upper() && !ac.g_at_zero.is_positive() {
        return Err(Error::GZeroNotPositive);
    }
    let denominator = match kind {
        FunctionalKind::Ep1 => min_abs_symmetric_sum(ac, prec)?,
        FunctionalKind::Ep3 => min_abs_symmetric_sum(ac, prec)?.mul(&Enclosure::from_int(2), prec),
        FunctionalKind::Ep2 | FunctionalKind::Ep4 => max_abs_pair_sum(ac, prec)?,
        FunctionalKind::J1A1 | FunctionalKind::J2A1 => truncated_shift_sum_max(ac, config.m, prec)?,
    };
    if denominator.lo() <= &Dyadic::zero() {
        return Err(Error::ZeroDenominator);
    }
    let numerator_exact = numerator(kind, ac);
    let numerator = numerator_exact.eval(c0, prec);
    let value = numerator.div(&denominator, prec).ok_or(Error::ZeroDenominator)?;
    let certified_bound = if kind.is_upper() { value.hi().clone() } else { value.lo().clone() };
    Ok(BoundCertificate { kind, numerator_exact, numerator, denominator, value, certified_bound })
}

/// Numerator as a quadratic form `a^T (A + c0 B) a` in the even coefficients
/// `a_0, ..., a_{d/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Vec<Rational>>,
}

impl BilinearForm {
    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn eval(&self, coeffs: &[Rational]) -> AffineC0 {
        let quad = |m: &Vec<Vec<Rational>>| {
            let mut acc = Rational::zero();
            for (i, ai) in coeffs.iter().enumerate() {
                for (j, aj) in coeffs.iter().enumerate() {
                    acc += &m[i][j] * ai * aj;
                }
            }
            acc
        };
        AffineC0 { constant: quad(&self.a), c0_coeff: quad(&self.b) }
    }

    /// `(A + c0 B)` as a dense `f64` matrix, row-major.
    pub fn to_f64(&self, c0: f64) -> Vec<Vec<f64>> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(ra, rb)| {
                ra.iter()
                    .zip(rb)
                    .map(|(x, y)| crate::rational::to_f64(x) + c0 * crate::rational::to_f64(y))
                    .collect()
            })
            .collect()
    }
}

/// Builds the numerator's bilinear form for polynomials of degree at most
/// `d`, from evaluations at `x^(2i) + x^(2j)`.
pub fn bilinear_numerator_matrix(kind: FunctionalKind, d: usize) -> BilinearForm {
    let k = d / 2 + 1;
    let basis = |i: usize, j: usize| {
        let mut v = vec![Rational::zero(); k];
        v[i] += int(1);
        v[j] += int(1);
        numerator(kind, &autocorrelate(&EvenPolynomial::new(v)))
    };
    let zero = vec![vec![Rational::zero(); k]; k];
    let (mut a, mut b) = (zero.clone(), zero);
    let quarter = rat(1, 4);
    let half = rat(1, 2);
    for i in 0..k {
        let n = basis(i, i);
        a[i][i] = &n.constant * &quarter;
        b[i][i] = &n.c0_coeff * &quarter;
    }
    for i in 0..k {
        for j in i + 1..k {
            let n = basis(i, j);
            let cij = (&n.constant - &a[i][i] - &a[j][j]) * &half;
            let dij = (&n.c0_coeff - &b[i][i] - &b[j][j]) * &half;
            a[i][j] = cij.clone();
            a[j][i] = cij;
            b[i][j] = dij.clone();
            b[j][i] = dij;
        }
    }
    BilinearForm { a, b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::c0_enclosure;

    fn cfg() -> EvalConfig {
        EvalConfig { m: 3, precision_bits: 128 }
    }

    #[test]
    fn directions() {
        use FunctionalKind::*;
        assert!(Ep1.is_upper() && Ep3.is_upper());
        assert!(!Ep2.is_upper() && !Ep4.is_upper() && !J1A1.is_upper() && !J2A1.is_upper());
        for k in FunctionalKind::ALL {
            assert_eq!(k.name().parse::<FunctionalKind>().unwrap(), k);
        }
    }

    #[test]
    fn box_values() {
        let c0 = c0_enclosure(128);
        let one = EvenPolynomial::one();
        let ep3 = eval_functional(FunctionalKind::Ep3, &one, &c0, &cfg()).unwrap();
        assert_eq!(ep3.numerator_exact, AffineC0::exact(rat(13, 6)));
        assert!(ep3.value.contains_rational(&rat(13, 12)));
        let ep1 = eval_functional(FunctionalKind::Ep1, &one, &c0, &cfg()).unwrap();
        assert!(ep1.value.contains_rational(&rat(4, 3)));
        let ep4 = eval_functional(FunctionalKind::Ep4, &one, &c0, &cfg()).unwrap();
        let (lo, hi) = ep4.value.to_f64_bounds();
        assert!(0.981897 < lo && hi < 0.981898);
    }

    #[test]
    fn zero_and_degenerate_inputs() {
        let c0 = c0_enclosure(128);
        let z = EvenPolynomial::default();
        assert_eq!(eval_functional(FunctionalKind::Ep1, &z, &c0, &cfg()), Err(Error::IdenticallyZero));
        // 1 - 12 x^2 integrates to zero over [-1/2, 1/2]
        let p = EvenPolynomial::from_ints(&[1, -12]);
        assert_eq!(eval_functional(FunctionalKind::Ep4, &p, &c0, &cfg()), Err(Error::GZeroNotPositive));
    }

    #[test]
    fn bilinear_degree_zero() {
        assert_eq!(bilinear_numerator_matrix(FunctionalKind::Ep1, 0).a, vec![vec![rat(4, 3)]]);
        assert_eq!(bilinear_numerator_matrix(FunctionalKind::Ep3, 0).a, vec![vec![rat(13, 6)]]);
    }

    #[test]
    fn bilinear_matches_direct_numerator() {
        let p = EvenPolynomial::parse("5,-1,1/3").unwrap();
        for kind in FunctionalKind::ALL {
            let form = bilinear_numerator_matrix(kind, 4);
            assert_eq!(form.eval(p.even_coeffs()), numerator(kind, &autocorrelate(&p)));
        }
    }
}
