//! Named polynomials from the published computations, addressable by alias.

use crate::error::{Error, Result};
use crate::exactpoly::EvenPolynomial;

/// Even coefficients (ascending) of `p1`, the EP3 candidate.
pub const P1: &str = "1,-157/1000,69/10,-59,-152,815,200";
/// `5 - x^2`, the EP4 candidate.
pub const P2: &str = "5,-1";
/// Even coefficients of `p3`, the EP1 candidate.
pub const P3: &str = "1,-7/250,303/100,-152/5,-2743/10,2203,-3855";
/// `250/47 - x^2`, the EP2 candidate.
pub const Q2: &str = "250/47,-1";

pub const ALIASES: [(&str, &str); 4] = [("p1", P1), ("p2", P2), ("p3", P3), ("q2", Q2)];

/// Resolves an alias (`p1`, `p2`, `p3`, `q2`) or parses the coefficient list.
pub fn resolve(spec: &str) -> Result<EvenPolynomial> {
    let key = spec.trim().to_ascii_lowercase();
    match ALIASES.iter().find(|(name, _)| *name == key) {
        Some((_, coeffs)) => EvenPolynomial::parse(coeffs),
        None => EvenPolynomial::parse(spec).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{msg} (expected coefficients like \"5,-1\" or one of p1, p2, p3, q2)")),
            other => other,
        }),
    }
}

pub fn p1() -> EvenPolynomial {
    EvenPolynomial::parse(P1).expect("valid preset")
}

pub fn p2() -> EvenPolynomial {
    EvenPolynomial::parse(P2).expect("valid preset")
}

pub fn p3() -> EvenPolynomial {
    EvenPolynomial::parse(P3).expect("valid preset")
}

pub fn q2() -> EvenPolynomial {
    EvenPolynomial::parse(Q2).expect("valid preset")
}
