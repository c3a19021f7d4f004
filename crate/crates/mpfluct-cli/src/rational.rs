//! Parsing of exact rational command-line values ("num/den" or a plain
//! integer), mirroring the configuration file format.

use num::{BigInt, BigRational, Signed, Zero};
use std::str::FromStr;

/// Parses `"3/4"` or `"2"` into an exact rational.
///
/// # Errors
///
/// A description of the malformed input (empty parts, non-integers, zero
/// denominators).
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let mut parts = text.splitn(2, '/');
    let num_text = parts.next().unwrap_or("").trim();
    let num = BigInt::from_str(num_text)
        .map_err(|_| format!("expected an integer numerator, got {num_text:?}"))?;
    match parts.next() {
        None => Ok(BigRational::from_integer(num)),
        Some(den_text) => {
            let den_text = den_text.trim();
            let den = BigInt::from_str(den_text)
                .map_err(|_| format!("expected an integer denominator, got {den_text:?}"))?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Parses a rational and requires it to be positive.
///
/// # Errors
///
/// As [`parse_rational`], plus non-positive values.
pub fn parse_positive_rational(text: &str) -> Result<BigRational, String> {
    let value = parse_rational(text)?;
    if !value.is_positive() {
        return Err(format!("expected a positive rational, got {text:?}"));
    }
    Ok(value)
}
