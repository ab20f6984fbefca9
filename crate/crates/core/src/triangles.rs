//! Triangle-kernel bounds for the averaged pair-correlation integral over
//! `[0, l]`.
//!
//! The building block is the Fejer-type kernel `K_d(x) = d (sin(pi d x) /
//! (pi d x))^2`, whose Fourier transform is the triangle `(1 - |a|/d)_+`.
//! Upper bounds come from sums of triangles covering `[0, l]`, lower bounds
//! from sums of triangles below the indicator of `[0, l]`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::enclosure::{cbrt_rational, Enclosure};
use crate::error::{Error, Result};
use crate::rational::{format_rational, fract, int, positive_part, rat, Rational};

/// `rho_Delta(K_d)`: `1 + d^2/3` for `d <= 1`, `d + 1/(3d)` for `1 < d <= Delta`.
pub fn rho_k(delta: &Rational, big_delta: &Rational) -> Result<Rational> {
    if !delta.is_positive() || delta > big_delta {
        return Err(Error::out_of_range(
            "delta",
            format!("need 0 < delta <= Delta, got delta = {}, Delta = {}", format_rational(delta), format_rational(big_delta)),
        ));
    }
    Ok(rho_unchecked(delta))
}

fn rho_unchecked(d: &Rational) -> Rational {
    if d <= &int(1) {
        int(1) + d * d / int(3)
    } else {
        d + (int(3) * d).recip()
    }
}

fn require_positive_ell(ell: &Rational) -> Result<()> {
    if ell.is_positive() {
        Ok(())
    } else {
        Err(Error::out_of_range("ell", format!("need ell > 0, got {}", format_rational(ell))))
    }
}

/// The `l >= 1` expression of the closed-form upper bound (also one side of
/// the minimum for `0 < l < 1`).
fn upper_main(ell: &Rational) -> Rational {
    let f = fract(&(ell / int(2)));
    let f2 = &f * &f;
    let f3 = &f2 * &f;
    let tail = positive_part(int(2) * &f3 - int(6) * &f2 - int(6) * &f + int(5));
    rat(13, 12) * (ell + int(2)) + &f3 / int(3) - rat(7, 6) * &f - tail / int(6)
}

/// Closed-form upper bound `C+(l)` (limit `Delta -> 2` for `l >= 1`, the
/// `Delta = 1` construction for `l < 1`).
pub fn upper_bound_closed(ell: &Rational, prec: u32) -> Result<Enclosure> {
    require_positive_ell(ell)?;
    let main = upper_main(ell);
    if ell >= &int(1) {
        return Ok(Enclosure::from_rational(&main, prec));
    }
    let wp = prec + 16;
    let l2 = ell * ell;
    let root = cbrt_rational(&(&l2 / int(6)), wp);
    let alt = Enclosure::from_rational(&(ell / (int(2) - ell)), wp);
    let c = root.max(&alt);
    let one_c = c.add(&Enclosure::from_int(1), wp);
    let ratio = one_c.div(&c, wp).expect("c > 0");
    let inner = ratio.mul(&ratio, wp).mul_rational(&(&l2 / int(12)), wp).add(&Enclosure::from_int(1), wp);
    let small = one_c.mul(&inner, wp);
    Ok(Enclosure::from_rational(&main, wp).min(&small).round(prec))
}

/// The two expressions under the maximum of the closed-form lower bound
/// for `l >= 2`: (three-size construction, single triangle).
pub fn lower_branches(ell: &Rational) -> (Rational, Rational) {
    let f = fract(&(ell / int(2)));
    let f2 = &f * &f;
    let tail = positive_part(-&f2 + int(6) * &f - int(3));
    let three = rat(11, 12) * (ell - int(2)) + &f2 / int(2) - rat(5, 6) * &f + rat(1, 3) + &f / int(6) * tail;
    let single = ell / int(2) - (int(3) * ell / int(2)).recip();
    (three, single)
}

/// Closed-form lower bound `C-(l)`.
pub fn lower_bound_closed(ell: &Rational) -> Result<Rational> {
    require_positive_ell(ell)?;
    if ell <= &int(2) {
        return Ok(positive_part(ell - int(1) - ell * ell / int(12)));
    }
    let (a, b) = lower_branches(ell);
    Ok(a.max(b))
}

/// Bracket of width `2^-60` around the crossover `l1` in `(3, 37/10)` past
/// which the three-size branch of [`lower_bound_closed`] dominates.
pub fn lower_crossover() -> (Rational, Rational) {
    let gap = |l: &Rational| {
        let (a, b) = lower_branches(l);
        a - b
    };
    let mut lo = int(3);
    let mut hi = rat(37, 10);
    debug_assert!(gap(&lo).is_negative() && gap(&hi).is_positive());
    let width = Rational::new(BigInt::one(), BigInt::one() << 60u32);
    while &hi - &lo > width {
        let m = (&lo + &hi) / int(2);
        if gap(&m).is_positive() {
            hi = m;
        } else {
            lo = m;
        }
    }
    (lo, hi)
}

// ---------------------------------------------------------------------------
// general Delta

fn require_delta(big_delta: &Rational, closed_top: bool) -> Result<()> {
    let lo_ok = big_delta >= &rat(4, 3);
    let hi_ok = if closed_top { big_delta <= &int(2) } else { big_delta < &int(2) };
    if lo_ok && hi_ok {
        Ok(())
    } else {
        let range = if closed_top { "[4/3, 2]" } else { "[4/3, 2)" };
        Err(Error::out_of_range("Delta", format!("need Delta in {range}, got {}", format_rational(big_delta))))
    }
}

/// The auxiliary cubics of the general-`Delta` bounds, evaluated exactly.
pub mod aux {
    use super::*;

    pub fn p(d: &Rational, x: &Rational) -> Rational {
        let x1 = x + int(1);
        let d2 = d * d;
        &x1 * (&d2 * d * &x1 * &x1 - int(12) * &d2 + int(12) * d - int(4)) / (int(12) * d)
    }

    pub fn q(d: &Rational, x: &Rational) -> Rational {
        d * d * x * x * x / int(12) + x * (int(1) - d - (int(3) * d).recip())
    }

    pub fn r(d: &Rational, x: &Rational) -> Rational {
        d * d * x * x * x / int(12) - d * x * x / int(2) + (int(1) - d) * x + d / int(2) - (int(3) * d).recip()
    }

    pub fn u(d: &Rational, x: &Rational) -> Rational {
        let x1 = x + int(1);
        let d2 = d * d;
        (-(&d2 * d) * &x1 * &x1 * &x1 / int(4) + int(3) * &d2 * (x * x + int(1)) - int(3) * d * &x1 + int(2) * x)
            / (int(6) * d)
    }

    pub fn v(d: &Rational, x: &Rational) -> Rational {
        let xm = x - int(1);
        &xm * (int(3) * d * d * &xm + int(4)) / (int(12) * d)
    }

    pub fn w(d: &Rational, x: &Rational) -> Rational {
        x * (-(d * d) * x * x / int(12) + d * x - int(1)) / int(2)
    }
}

/// `2/Delta - 1`, the fractional part below which the middle triangle of
/// half-width `Delta (1 + x)/2` is narrower than 1.
fn narrow_threshold(big_delta: &Rational) -> Rational {
    int(2) / big_delta - int(1)
}

/// Exact test of `x > (6 - 2 sqrt 6) / Delta`, the condition under which
/// the small triangle of half-width `Delta x / 2` improves the lower bound.
pub fn small_bump_included(x: &Rational, big_delta: &Rational) -> bool {
    let t = int(6) - big_delta * x;
    t.is_negative() || &t * &t < int(24)
}

/// General-`Delta` upper bound `C+_Delta(l)`.
pub fn general_upper(ell: &Rational, big_delta: &Rational) -> Result<Rational> {
    require_positive_ell(ell)?;
    require_delta(big_delta, false)?;
    Ok(general_upper_unchecked(ell, big_delta))
}

fn general_upper_unchecked(ell: &Rational, d: &Rational) -> Rational {
    let x = fract(&(ell / d));
    let base = ((int(3) * d * d).recip() + int(1)) * (d + ell);
    if x < narrow_threshold(d) {
        base + aux::p(d, &x)
    } else {
        base + aux::q(d, &x) - positive_part(aux::r(d, &x))
    }
}

/// General-`Delta` lower bound `C-_Delta(l)` for `l >= Delta`.
pub fn general_lower(ell: &Rational, big_delta: &Rational) -> Result<Rational> {
    require_delta(big_delta, false)?;
    if ell < big_delta {
        return Err(Error::out_of_range("ell", format!("need ell >= Delta, got {}", format_rational(ell))));
    }
    Ok(general_lower_unchecked(ell, big_delta))
}

fn general_lower_unchecked(ell: &Rational, d: &Rational) -> Rational {
    let x = fract(&(ell / d));
    let base = (int(1) - (int(3) * d * d).recip()) * (ell - d);
    if x < narrow_threshold(d) {
        base + aux::u(d, &x)
    } else {
        base + aux::v(d, &x) + positive_part(aux::w(d, &x))
    }
}

// ---------------------------------------------------------------------------
// explicit configurations

/// One summand `h * K_d(x) e(-xi x)`, i.e. a triangle of half-width `d`
/// and height `h` centered at `xi` on the Fourier side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleBump {
    pub half_width: Rational,
    pub height_scale: Rational,
    pub center: Rational,
}

impl TriangleBump {
    pub fn value_at(&self, alpha: &Rational) -> Rational {
        let t = (alpha - &self.center).abs() / &self.half_width;
        if t >= int(1) {
            Rational::zero()
        } else {
            &self.height_scale * (int(1) - t)
        }
    }

    /// `2 g(0) - rho(g)` for the corresponding kernel.
    fn lower_gain(&self) -> Rational {
        &self.height_scale * (int(2) * &self.half_width - rho_unchecked(&self.half_width))
    }

    fn rho(&self) -> Rational {
        &self.height_scale * rho_unchecked(&self.half_width)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleConfig {
    pub bumps: Vec<TriangleBump>,
    pub ell: Rational,
    pub delta: Rational,
    pub side: Side,
    /// Upper side: `sum rho_Delta(g_j)`. Lower side: `sum (2 g_j(0) - rho_Delta(g_j))`.
    pub objective: Rational,
}

impl TriangleConfig {
    /// `sum_j ghat_j(alpha - xi_j)`.
    pub fn total_at(&self, alpha: &Rational) -> Rational {
        self.bumps.iter().map(|b| b.value_at(alpha)).sum()
    }

    /// Number of large, (medium,) and small triangles by half-width.
    pub fn distinct_half_widths(&self) -> Vec<Rational> {
        let mut w: Vec<Rational> = self.bumps.iter().map(|b| b.half_width.clone()).collect();
        w.sort();
        w.dedup();
        w
    }
}

/// Builds the explicit feasible configuration behind [`general_upper`] or
/// [`general_lower`]. Here `Delta = 2` is accepted as well.
pub fn build_config(ell: &Rational, big_delta: &Rational, side: Side) -> Result<TriangleConfig> {
    require_positive_ell(ell)?;
    require_delta(big_delta, true)?;
    let d = big_delta;
    let k = (ell / d).floor();
    let x = ell / d - &k;
    let k = k.to_integer();
    let kn = |v: &BigInt| usize::try_from(v).map_err(|_| Error::out_of_range("ell", "too many triangles"));
    let mut bumps = Vec::new();
    match side {
        Side::Upper => {
            // second choice: n = floor(l/D), d = D(1+x)/2; first: n + 1, D x/2
            let second = x < narrow_threshold(d) || aux::r(d, &x).is_positive();
            let (n, delta) = if second {
                (kn(&k)?, d * (int(1) + &x) / int(2))
            } else {
                (kn(&k)? + 1, d * &x / int(2))
            };
            let small = TriangleBump { half_width: delta.clone(), height_scale: &delta / d, center: Rational::zero() };
            bumps.push(small.clone());
            for j in 2..=n + 1 {
                bumps.push(TriangleBump {
                    half_width: d.clone(),
                    height_scale: int(1),
                    center: &delta + d * int(j as i64 - 2),
                });
            }
            bumps.push(TriangleBump { center: ell.clone(), ..small });
        }
        Side::Lower if ell < d => {
            let single = TriangleBump { half_width: ell / int(2), height_scale: int(1), center: ell / int(2) };
            if single.lower_gain().is_positive() {
                bumps.push(single);
            }
        }
        Side::Lower => {
            let n = kn(&k)? - 1;
            for j in 1..=n {
                bumps.push(TriangleBump { half_width: d.clone(), height_scale: int(1), center: d * int(j as i64) });
            }
            let d1 = d * (int(1) + &x) / int(2);
            bumps.push(TriangleBump {
                half_width: d1.clone(),
                height_scale: &d1 / d,
                center: d * int(n as i64) + &d1,
            });
            if x.is_positive() && small_bump_included(&x, d) {
                let d2 = d * &x / int(2);
                bumps.push(TriangleBump {
                    half_width: d2.clone(),
                    height_scale: &d2 / d,
                    center: d * int(n as i64 + 1) + &d2,
                });
            }
        }
    }
    let objective = match side {
        Side::Upper => bumps.iter().map(TriangleBump::rho).sum(),
        Side::Lower => bumps.iter().map(TriangleBump::lower_gain).sum(),
    };
    Ok(TriangleConfig { bumps, ell: ell.clone(), delta: d.clone(), side, objective })
}

/// Summary of a successful feasibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub points_checked: usize,
    /// Smallest and largest value of the sum over `[0, l]`.
    pub min_inside: Rational,
    pub max_inside: Rational,
}

/// Exact feasibility check. The sum of triangles is piecewise linear with
/// kinks only at `xi_j`, `xi_j +- d_j`, so checking those points together with
/// `0` and `l` is a proof; the `grid` points are extra redundancy.
pub fn validate_config(cfg: &TriangleConfig, grid: usize) -> Result<ValidationReport> {
    let infeasible = |alpha: &Rational, reason: String| Error::Infeasible { witness: format_rational(alpha), reason };
    for b in &cfg.bumps {
        if !b.half_width.is_positive() || !b.height_scale.is_positive() {
            return Err(infeasible(&b.center, "triangle with non-positive width or height".into()));
        }
        if b.half_width > cfg.delta {
            return Err(infeasible(&b.center, "triangle wider than Delta".into()));
        }
    }
    let ell = &cfg.ell;
    let mut points = vec![Rational::zero(), ell.clone()];
    for b in &cfg.bumps {
        points.push(&b.center - &b.half_width);
        points.push(b.center.clone());
        points.push(&b.center + &b.half_width);
    }
    let grid = grid.max(1);
    for i in 0..=grid {
        points.push(ell * rat(i as i64, grid as i64));
    }
    points.sort();
    points.dedup();

    let mut min_inside: Option<Rational> = None;
    let mut max_inside: Option<Rational> = None;
    for a in &points {
        let s = cfg.total_at(a);
        let inside = !a.is_negative() && a <= ell;
        match cfg.side {
            Side::Upper => {
                if inside && s < int(1) {
                    return Err(infeasible(a, format!("sum {} < 1 inside [0, l]", format_rational(&s))));
                }
            }
            Side::Lower => {
                let boundary = a.is_zero() || a == ell;
                if (!inside || boundary) && !s.is_zero() {
                    return Err(infeasible(a, format!("sum {} != 0 outside (0, l)", format_rational(&s))));
                }
                if s > int(1) {
                    return Err(infeasible(a, format!("sum {} > 1", format_rational(&s))));
                }
            }
        }
        if inside {
            min_inside = Some(min_inside.map_or(s.clone(), |m: Rational| m.min(s.clone())));
            max_inside = Some(max_inside.map_or(s.clone(), |m: Rational| m.max(s)));
        }
    }
    Ok(ValidationReport {
        points_checked: points.len(),
        min_inside: min_inside.unwrap_or_else(Rational::zero),
        max_inside: max_inside.unwrap_or_else(Rational::zero),
    })
}
