//! Exact rational scalar plus the text forms used by spec files and reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `[x]^+`
pub fn pos(x: Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else {
        x
    }
}

/// Parses `"a/b"`, an integer, or a decimal such as `"0.125"` / `"-1.5e-2"`.
/// Decimals are read digit by digit, so `"0.1"` is exactly `1/10`.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in '{text}'")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in '{text}'")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{text}'")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| Error::Parse(format!("not a rational or decimal: '{text}'")))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{whole}{frac}").parse().ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(digits);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Canonical text form: `"3"`, `"-7/4"`.
pub fn format(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse(" 6/8 ").unwrap(), ratio(3, 4));
        assert_eq!(parse("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse("1").unwrap(), int(1));
        assert_eq!(parse(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse("-1.5e-2").unwrap(), ratio(-3, 200));
        assert_eq!(parse("2E1").unwrap(), int(20));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", ".", "1/x", "0x10"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format(&ratio(6, 8)), "3/4");
        assert_eq!(format(&int(-2)), "-2");
        assert_eq!(parse(&format(&ratio(-56, 65))).unwrap(), ratio(-56, 65));
    }
}
