//! Exact rational scalars and their text encodings.
//!
//! All coefficients, timestamps and distances in this crate are arbitrary
//! precision rationals. Floating point never enters any computation: the
//! positive/negative classification of an insertion and every stability
//! comparison are exact equality tests.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from an integer pair. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer-valued rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a plain decimal like `-1.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in `{s}`"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in `{s}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            format!("{int_part}0")
        } else {
            int_part.to_string()
        };
        let i: BigInt = int_part
            .parse()
            .map_err(|_| format!("bad decimal in `{s}`"))?;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal in `{s}`"));
        }
        let f: BigInt = frac_part
            .parse()
            .map_err(|_| format!("bad decimal in `{s}`"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let unsigned = i.abs() * &scale + f;
        let signed = if negative { -unsigned } else { unsigned };
        return Ok(Rational::new(signed, scale));
    }
    let n: BigInt = s.parse().map_err(|_| format!("bad integer `{s}`"))?;
    Ok(Rational::from_integer(n))
}

/// Canonical text form: `p` when the denominator is one, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal form when the denominator divides a power of ten, `p/q` otherwise.
pub fn format_preferring_decimal(r: &Rational) -> String {
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format_rational(r);
    }
    if twos == 0 && fives == 0 {
        return r.numer().to_string();
    }
    let digits = twos.max(fives);
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r.numer() * &scale / r.denom();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let abs = scaled.abs().to_string();
    let abs = if abs.len() <= digits as usize {
        format!("{}{}", "0".repeat(digits as usize + 1 - abs.len()), abs)
    } else {
        abs
    };
    let (int_part, frac_part) = abs.split_at(abs.len() - digits as usize);
    format!("{sign}{int_part}.{frac_part}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_ratio_and_decimal() {
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("1.5").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn canonical_formatting_round_trips() {
        for (n, d) in [(0, 1), (5, 1), (-7, 3), (22, 7), (1, 1000)] {
            let r = rat(n, d);
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn decimal_rendering_is_exact_or_falls_back() {
        assert_eq!(format_preferring_decimal(&rat(3, 2)), "1.5");
        assert_eq!(format_preferring_decimal(&rat(-1, 4)), "-0.25");
        assert_eq!(format_preferring_decimal(&rat(1, 3)), "1/3");
        assert_eq!(format_preferring_decimal(&rat_int(4)), "4");
        assert_eq!(format_preferring_decimal(&rat(1, 10)), "0.1");
    }
}
