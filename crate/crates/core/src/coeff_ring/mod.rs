//! Exact scalars and the polynomial coefficient ring.

mod linsolve;
mod polynomial;

pub use linsolve::{solve, RationalMatrix, Solution};
pub use polynomial::{Monomial, Polynomial, PolynomialDisplay};

use num_bigint::BigInt;

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a [`Rational`].
///
/// # Panics
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
