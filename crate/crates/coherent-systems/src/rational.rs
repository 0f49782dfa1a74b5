//! Exact rational scalars and their canonical text form.
//!
//! Every quantity in this crate that is not a plain integer is a
//! [`Rational`]: arbitrary-precision, always in lowest terms with a positive
//! denominator. The canonical text form is `p/q` (or `p` when `q = 1`),
//! which is what `Display` already produces.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{input}` is not a valid rational (expected `p` or `p/q` with q != 0)")]
pub struct RationalParseError {
    pub input: String,
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(input: &str) -> Result<Rational, RationalParseError> {
    input
        .trim()
        .parse::<Rational>()
        .map_err(|_| RationalParseError {
            input: input.to_owned(),
        })
}

/// Rational with value `n`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational(" 1/2 ").unwrap(), ratio(1, 2));
    }

    #[test]
    fn rejects_garbage_and_zero_denominator() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("one half").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(ratio(4, 6).to_string(), "2/3");
        assert_eq!(ratio(3, -6).to_string(), "-1/2");
        assert_eq!(ratio(8, 4).to_string(), "2");
    }
}
