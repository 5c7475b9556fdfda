//! The exact number carrier used everywhere in the crate.
//!
//! Values are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator. The text form is base-10 `p/q` or a bare integer;
//! no decimal notation is accepted or produced.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d`, normalized. Panics on a zero denominator; use [`parse_rational`]
/// for untrusted input.
pub fn ratio(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed rational `{0}`")]
    Malformed(String),
}

/// Parse `p`, `-p`, or `p/q` (base 10). The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let mut parts = s.splitn(2, '/');
    let numer = parts.next().unwrap();
    let numer: BigInt = numer
        .parse()
        .map_err(|_| RationalParseError::BadInteger(numer.to_string()))?;
    match parts.next() {
        None => Ok(BigRational::from_integer(numer)),
        Some(denom) => {
            if denom.contains('/') {
                return Err(RationalParseError::Malformed(s.to_string()));
            }
            let denom: BigInt = denom
                .parse()
                .map_err(|_| RationalParseError::BadInteger(denom.to_string()))?;
            if denom.is_zero() {
                return Err(RationalParseError::ZeroDenominator(s.to_string()));
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

/// Canonical text form: lowest terms, `p/q` only when the denominator is
/// not 1, minus sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Strictly positive test, spelled out since it reads better at call sites.
pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
