//! Exact rational coefficients.
//!
//! All coefficient arithmetic is `BigRational`: lowest terms, positive
//! denominator, so equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational n/d (d must be nonzero).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Largest integer ≤ q, as a `BigInt`.
pub fn floor_int(q: &Rat) -> BigInt {
    q.floor().to_integer()
}

/// Renders a rational as `p` or `p/q` (lowest terms, sign on the numerator).
pub fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Height of a rational: max(|numerator|, denominator).
pub fn height(q: &Rat) -> BigInt {
    q.numer().abs().max(q.denom().clone())
}

pub fn is_zero(q: &Rat) -> bool {
    q.is_zero()
}
