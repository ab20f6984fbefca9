//! Certified extremization of rational polynomials on rational intervals.
//!
//! Roots are isolated with Sturm sequences over the rationals and refined
//! by exact bisection. Extreme values are taken over the interval endpoints
//! and the isolated critical points; a critical point known only to lie in a
//! bracket of width `w` around `m` is bounded through a second-order Taylor
//! estimate at `m`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::exactpoly::{Autocorrelation, PolyQ};
use crate::rational::Rational;

/// Root brackets are refined until their width is at most `2^-ISOLATION_BITS`.
pub const ISOLATION_BITS: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// A closed rational interval containing exactly one root. `lo == hi` means
/// the root is known exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootBracket {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }
}

/// Real roots of a polynomial in an interval, plus the sign on each open
/// piece between consecutive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPartition {
    pub interval: (Rational, Rational),
    /// Sorted, pairwise disjoint.
    pub roots: Vec<RootBracket>,
    /// `signs[i]` is the sign between `roots[i-1]` and `roots[i]` (with the
    /// interval ends standing in at the boundary); length `roots.len() + 1`.
    pub signs: Vec<Sign>,
}

impl SignPartition {
    pub fn breakpoints(&self, prec: u32) -> Vec<Enclosure> {
        self.roots
            .iter()
            .map(|r| Enclosure::from_rational_bounds(&r.lo, &r.hi, prec))
            .collect()
    }
}

struct Sturm {
    seq: Vec<PolyQ>,
}

impl Sturm {
    fn new(square_free: &PolyQ) -> Self {
        let mut seq = vec![square_free.clone(), square_free.derivative().primitive()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            if seq[n - 1].degree() == Some(0) {
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push((-&r).primitive());
        }
        Sturm { seq }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.seq {
            let s = Sign::of(&p.eval(x)).as_i32();
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

fn half(x: &Rational, y: &Rational) -> Rational {
    (x + y) / Rational::from_integer(2.into())
}

/// Isolates every real root of `f` in `[a, b]`.
pub fn isolate_roots(f: &PolyQ, a: &Rational, b: &Rational) -> Result<SignPartition> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    assert!(a <= b, "empty interval");
    let max_width = Rational::new(BigInt::one(), BigInt::one() << ISOLATION_BITS);
    let mut roots = Vec::new();
    if f.degree().unwrap_or(0) >= 1 {
        let sf = f.square_free();
        let sturm = Sturm::new(&sf);
        if sf.eval(a).is_zero() {
            roots.push(RootBracket { lo: a.clone(), hi: a.clone() });
        }
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((l, r)) = stack.pop() {
            match sturm.count(&l, &r) {
                0 => {}
                1 => roots.push(refine(&sf, l, r, &max_width)),
                _ => {
                    let m = half(&l, &r);
                    // pushed right first so that brackets come out sorted
                    stack.push((m.clone(), r));
                    stack.push((l, m));
                }
            }
        }
    }
    let mut signs = Vec::with_capacity(roots.len() + 1);
    for i in 0..=roots.len() {
        let left = if i == 0 { a.clone() } else { roots[i - 1].hi.clone() };
        let right = if i == roots.len() { b.clone() } else { roots[i].lo.clone() };
        signs.push(Sign::of(&f.eval(&half(&left, &right))));
    }
    Ok(SignPartition { interval: (a.clone(), b.clone()), roots, signs })
}

/// Shrinks `(l, r]`, known to hold exactly one simple root of `f`.
fn refine(f: &PolyQ, mut l: Rational, mut r: Rational, max_width: &Rational) -> RootBracket {
    let fr = Sign::of(&f.eval(&r));
    if fr == Sign::Zero {
        return RootBracket { lo: r.clone(), hi: r };
    }
    while &(&r - &l) > max_width {
        let m = half(&l, &r);
        let fm = Sign::of(&f.eval(&m));
        if fm == Sign::Zero {
            return RootBracket { lo: m.clone(), hi: m };
        }
        if fm == fr {
            r = m;
        } else {
            l = m;
        }
    }
    RootBracket { lo: l, hi: r }
}

/// Rational bounds `lo <= max <= hi` for a polynomial on `[a, b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalBounds {
    pub lo: Rational,
    pub hi: Rational,
}

impl RationalBounds {
    pub fn to_enclosure(&self, prec: u32) -> Enclosure {
        Enclosure::from_rational_bounds(&self.lo, &self.hi, prec)
    }

    fn neg(self) -> RationalBounds {
        RationalBounds { lo: -self.hi, hi: -self.lo }
    }

    fn join_max(self, o: RationalBounds) -> RationalBounds {
        RationalBounds { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }
}

/// Certified maximum of `g` over `[a, b]`.
pub fn certified_max(g: &PolyQ, a: &Rational, b: &Rational) -> RationalBounds {
    let ga = g.eval(a);
    let gb = g.eval(b);
    let mut lo = ga.clone().max(gb);
    let mut hi = lo.clone();
    let dg = g.derivative();
    if dg.degree().unwrap_or(0) >= 1 {
        let part = isolate_roots(&dg, a, b).expect("non-constant derivative");
        let radius = a.abs().max(b.abs());
        let m2 = g.derivative_bound(2, &radius);
        let eight = Rational::from_integer(8.into());
        for br in &part.roots {
            if br.is_exact() {
                let v = g.eval(&br.lo);
                hi = hi.max(v.clone());
                lo = lo.max(v);
                continue;
            }
            let m = br.midpoint();
            let w = br.width();
            let v = g.eval(&m);
            let err = dg.eval(&m).abs() * &w / Rational::from_integer(2.into()) + &m2 * &w * &w / &eight;
            hi = hi.max(&v + err);
            lo = lo.max(v);
        }
    }
    RationalBounds { lo, hi }
}

/// Certified minimum of `g` over `[a, b]`.
pub fn certified_min(g: &PolyQ, a: &Rational, b: &Rational) -> RationalBounds {
    certified_max(&-g, a, b).neg()
}

fn unit() -> (Rational, Rational) {
    (Rational::zero(), Rational::one())
}

/// `min over [0,1] of |q(a) + q(1-a)|`. Exactly `[0, 0]` as soon as the sum
/// has a root in `[0, 1]`.
pub fn min_abs_symmetric_sum(ac: &Autocorrelation, prec: u32) -> Result<Enclosure> {
    if ac.q.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let s = &ac.q + &ac.q.reflect();
    let (a, b) = unit();
    if s.is_zero() {
        return Ok(Enclosure::zero());
    }
    let part = isolate_roots(&s, &a, &b)?;
    if !part.roots.is_empty() {
        return Ok(Enclosure::zero());
    }
    let bounds = match part.signs[0] {
        Sign::Positive => certified_min(&s, &a, &b),
        _ => certified_max(&s, &a, &b).neg(),
    };
    Ok(bounds.to_enclosure(prec))
}

/// `max over [0,1] of |q(a)| + |q(1-a)|`.
///
/// Since `|u| + |v| = max(u + v, u - v, -u + v, -u - v)`, the maximum is the
/// largest of four polynomial maxima; bounds from each are valid for the
/// whole expression on both sides.
pub fn max_abs_pair_sum(ac: &Autocorrelation, prec: u32) -> Result<Enclosure> {
    Ok(max_abs_pair_bounds(ac)?.to_enclosure(prec))
}

pub fn max_abs_pair_bounds(ac: &Autocorrelation) -> Result<RationalBounds> {
    if ac.q.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let (a, b) = unit();
    let u = &ac.q;
    let v = ac.q.reflect();
    let sum = u + &v;
    let diff = u - &v;
    // the (-,-) and (-,+) combinations are negatives of these two
    let out = certified_max(&sum, &a, &b)
        .join_max(certified_max(&-&sum, &a, &b))
        .join_max(certified_max(&diff, &a, &b))
        .join_max(certified_max(&-&diff, &a, &b));
    Ok(out)
}

/// `max over [0,1] of sum_{n=0}^{m} |ghat(n - a)|`. With `ghat` supported in
/// `[-1, 1]` only `n = 0, 1` contribute, so every `m >= 1` gives
/// [`max_abs_pair_sum`]; `m = 0` gives `max |q|`.
pub fn truncated_shift_sum_max(ac: &Autocorrelation, m: u32, prec: u32) -> Result<Enclosure> {
    if ac.q.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    if m >= 1 {
        return max_abs_pair_sum(ac, prec);
    }
    let (a, b) = unit();
    Ok(certified_max(&ac.q, &a, &b)
        .join_max(certified_max(&-&ac.q, &a, &b))
        .to_enclosure(prec))
}

/// Evaluates both sign-free pair expressions at `alpha`, for tests and plots.
pub fn pair_values(ac: &Autocorrelation, alpha: &Rational) -> (Rational, Rational) {
    let x = ac.q.eval(alpha);
    let y = ac.q.eval(&(Rational::one() - alpha));
    (&x + &y, x.abs() + y.abs())
}
