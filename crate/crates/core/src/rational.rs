//! Exact rational helpers: parsing, formatting and simplest-fraction search.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The exact rational number type used throughout the crate.
pub type Q = BigRational;

/// Builds `n / d` as an exact rational.
///
/// # Panics
/// Panics when `d` is zero.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `p/q`, an integer, or a decimal such as `0.3` or `-1.25e-2` exactly.
pub fn parse_rational(text: &str) -> Result<Q> {
    let s = text.trim();
    let bad = || Error::SyntaxError {
        line: 1,
        column: 1,
        message: format!("invalid rational `{s}`"),
    };
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Q::from_integer(n);
    if scale >= 0 {
        value *= Q::from_integer(num::pow(ten, scale as usize));
    } else {
        value /= Q::from_integer(num::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Formats a rational as `p/q`, or as `p` when the denominator is one.
pub fn fmt_q(value: &Q) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Lossy conversion to `f64`, used only for human-readable output and tolerances.
pub fn to_f64(value: &Q) -> f64 {
    use num::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// Returns the rational with the smallest denominator in the closed interval `[lo, hi]`.
///
/// Ties between equal denominators go to the value closest to zero. Requires `lo <= hi`.
pub fn simplest_between(lo: &Q, hi: &Q) -> Q {
    assert!(lo <= hi, "simplest_between needs lo <= hi");
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Q::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Q, hi: &Q) -> Q {
    // Continued-fraction descent on the interval [lo, hi] with 0 < lo <= hi.
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl < hi.floor() || (&(fl.clone() + Q::one()) <= hi) {
        return fl + Q::one();
    }
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let inner = simplest_positive(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.3").unwrap(), q(3, 10));
        assert_eq!(parse_rational("-1.25e-2").unwrap(), q(-1, 80));
        assert_eq!(parse_rational("7/14").unwrap(), q(1, 2));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn simplest_fraction_search() {
        assert_eq!(simplest_between(&q(3, 10), &q(4, 10)), q(1, 3));
        assert_eq!(simplest_between(&q(1, 2), &q(1, 2)), q(1, 2));
        assert_eq!(simplest_between(&q(3, 2), &q(5, 2)), qi(2));
        assert_eq!(
            simplest_between(&q(333_333, 1_000_000), &q(333_334, 1_000_000)),
            q(1, 3)
        );
        assert_eq!(simplest_between(&q(-2, 3), &q(-1, 2)), q(-1, 2));
    }
}
