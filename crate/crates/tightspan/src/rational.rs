//! Exact rational arithmetic.
//!
//! Every numeric quantity in this crate (distances, matching weights,
//! vertex coordinates, LP tableau entries) is a [`Rational`]:
//! an arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. There is no floating point anywhere in the toolkit, so
//! equality tests and sign checks are always exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always normalized.
pub type Rational = num_rational::BigRational;

/// Shorthand for `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Error from [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    input: String,
}

impl std::fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid rational literal {:?} (expected `p` or `p/q`)", self.input)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p"` or `"p/q"` with decimal integers and optional leading `-`.
///
/// This is the number syntax of the metric file formats.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: s.to_string() };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let parse_int = |tok: &str| -> Result<BigInt, ParseRationalError> {
        if tok.is_empty() {
            return Err(err());
        }
        let body = tok.strip_prefix('-').unwrap_or(tok);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        tok.parse::<BigInt>().map_err(|_| err())
    };
    let p = parse_int(num)?;
    let q = match den {
        Some(d) => {
            let q = parse_int(d)?;
            if q.is_zero() {
                return Err(err());
            }
            q
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(p, q))
}

/// Formats a rational as `"p"` or `"p/q"`, the inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True iff `r > 0`.
pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "3/2", "-10/4", "1048576/3"] {
            let r = parse_rational(s).unwrap();
            let back = parse_rational(&format_rational(&r)).unwrap();
            assert_eq!(r, back);
        }
        // normalization: -10/4 prints reduced
        assert_eq!(format_rational(&parse_rational("-10/4").unwrap()), "-5/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a", "1.5", "2/", "/3", "1/2/3", "+4", "0x10"] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn exactness() {
        let third = rat(1, 3);
        let sum = &third + &third + &third;
        assert_eq!(sum, int(1));
    }
}
