//! Exact decimal-string parsing.
//!
//! Decimal literals such as `"0.001"` or `"2.5e-3"` are converted to
//! `BigRational` without any intermediate float, so the value is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::pow::Pow;

use crate::error::{Error, Result};

/// Parse a decimal string (optional sign, optional fraction, optional
/// base-10 exponent) into an exact rational.
pub(crate) fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let malformed = || Error::MalformedDecimal(text.to_owned());

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let exp: i64 = s[i + 1..].parse().map_err(|_| malformed())?;
            (&s[..i], exp)
        }
        None => (s, 0),
    };

    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };

    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }

    let mut numer: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| malformed())?;
    numer *= sign;

    let ten = BigInt::from(10);
    let scale = exponent - frac_part.len() as i64;
    if scale >= 0 {
        numer *= ten.pow(scale as u64);
        Ok(BigRational::from_integer(numer))
    } else {
        Ok(BigRational::new(numer, ten.pow((-scale) as u64)))
    }
}
