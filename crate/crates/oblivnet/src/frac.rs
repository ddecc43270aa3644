//! Exact parsing of fractions from command-line style text. Accepts
//! `p/q`, plain integers, and decimal literals, all converted without
//! float rounding so bound comparisons stay exact.

use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FracError {
    #[error("cannot parse `{0}` as a fraction")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn parse_ratio(s: &str) -> Result<Rational64, FracError> {
    let text = s.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| FracError::Malformed(s.to_string()))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| FracError::Malformed(s.to_string()))?;
        if d == 0 {
            return Err(FracError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational64::new(n, d));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(FracError::Malformed(s.to_string()));
        }
        let negative = int_part.starts_with('-');
        let whole: i64 = if int_part == "-" || int_part.is_empty() {
            0
        } else {
            int_part
                .parse()
                .map_err(|_| FracError::Malformed(s.to_string()))?
        };
        let digits = frac_part.len() as u32;
        let scale = 10i64
            .checked_pow(digits)
            .ok_or_else(|| FracError::Malformed(s.to_string()))?;
        let frac: i64 = frac_part
            .parse()
            .map_err(|_| FracError::Malformed(s.to_string()))?;
        let magnitude = whole.abs() * scale + frac;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rational64::new(signed, scale));
    }
    text.parse::<i64>()
        .map(Rational64::from_integer)
        .map_err(|_| FracError::Malformed(s.to_string()))
}
