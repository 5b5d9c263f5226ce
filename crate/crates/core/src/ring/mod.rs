//! Exact arithmetic: rationals, polynomials in `Q[x1, ..., xm]`, and their
//! derivations.
//!
//! `m = 0` is allowed and gives the ground field `Q` itself.

mod derivation;
mod parse;
mod poly;

pub use derivation::Derivation;
pub use parse::{parse_poly, PolyParseError};
pub use poly::{Monomial, Poly};

/// Exact rational numbers, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `p / q` as a [`Rational`]. Panics if `q == 0`.
pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
