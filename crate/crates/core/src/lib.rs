//! Certified bounds for Fourier extremal problems over bandlimited test
//! functions whose Fourier transform is supported in `[-1, 1]`.
//!
//! Numerators are exact rationals, denominators and transcendental constants
//! are directed-rounding [`Enclosure`]s, and every reported bound is
//! one-sided: an upper bound is never underestimated, a lower bound never
//! overestimated.

pub mod constants;
pub mod dyadic;
pub mod enclosure;
pub mod error;
pub mod exactpoly;
pub mod extremize;
pub mod functionals;
pub mod praxis;
pub mod presets;
pub mod rational;
pub mod triangles;

pub use dyadic::{Dyadic, Rounding};
pub use enclosure::{Enclosure, DEFAULT_PRECISION};
pub use error::{Error, Result};
pub use functionals::{eval_functional, BoundCertificate, Direction, EvalConfig, FunctionalKind};
pub use exactpoly::{autocorrelate, weighted_moments, Autocorrelation, EvenPolynomial, MomentSet, PolyQ};
pub use rational::Rational;
