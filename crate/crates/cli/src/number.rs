//! Parsing of probabilities written as fractions or decimals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{CliError, CliResult};

/// Parses `"a/b"`, `"a"` or `"a.b"` exactly; `"0.1"` becomes `1/10`.
pub fn parse_rational(s: &str) -> CliResult<BigRational> {
    let bad = || CliError::Usage(format!("cannot read {s:?} as an exact number (use a/b or a decimal)"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars())).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let value = BigRational::new(digits, scale);
    Ok(if negative { -value } else { value })
}

/// Like [`parse_rational`] but also accepts anything `f64` parses, such as
/// `1e-9`.
pub fn parse_real(s: &str) -> CliResult<f64> {
    if let Ok(v) = s.trim().parse::<f64>() {
        return Ok(v);
    }
    parse_rational(s)?.to_f64().ok_or_else(|| CliError::Usage(format!("{s:?} is out of range")))
}

pub fn parse_rational_list(s: &str) -> CliResult<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

pub fn parse_real_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',').map(parse_real).collect()
}
