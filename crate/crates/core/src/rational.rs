//! Exact rational helpers on top of [`num_rational::BigRational`].
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, so it is used directly as the crate's `Rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `p/q` or a plain decimal such as `0.05` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if (digits.is_empty() && frac.is_empty())
            || !digits.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let mantissa: BigInt = format!("{digits}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // to_f64 only fails on overflow
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Rounds `r * 10^decimals` half away from zero and returns the scaled integer.
fn round_half_up_scaled(r: &Rational, decimals: usize) -> BigInt {
    let scale = num_traits::pow(BigInt::from(10), decimals);
    let scaled = r * Rational::from_integer(scale);
    let (q, rem) = scaled.numer().abs().div_rem(scaled.denom());
    let twice = rem * 2u32;
    let mut q = q;
    if &twice >= scaled.denom() {
        q += 1u32;
    }
    if scaled.is_negative() {
        -q
    } else {
        q
    }
}

/// Fixed-point rendering with round-half-up, e.g. `44.15`.
pub fn fmt_fixed(r: &Rational, decimals: usize) -> String {
    let q = round_half_up_scaled(r, decimals);
    let negative = q.is_negative();
    let digits = q.abs().to_string();
    let body = if decimals == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = decimals + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - decimals);
        format!("{int_part}.{frac_part}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// `%g`-style rendering with `sig` significant digits, computed exactly.
pub fn fmt_sig(r: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    let ten = Rational::from_integer(BigInt::from(10));
    // decimal exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = 0;
    let mut probe = Rational::one();
    if a >= probe {
        while a >= &probe * &ten {
            probe *= &ten;
            e += 1;
        }
    } else {
        while a < probe {
            probe /= &ten;
            e -= 1;
        }
    }
    // mantissa digits: round(a / 10^(e - sig + 1))
    let shift = e - sig as i64 + 1;
    let scaled = if shift >= 0 {
        &a / num_traits::pow(ten.clone(), shift as usize)
    } else {
        &a * num_traits::pow(ten.clone(), (-shift) as usize)
    };
    let mut m = round_half_up_scaled(&scaled, 0);
    if m.to_string().len() > sig {
        // rounding carried into a new digit
        m /= 10u32;
        e += 1;
    }
    let digits = m.to_string();
    let body = if e < -4 || e >= sig as i64 {
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        let mant = if tail.is_empty() {
            head.to_string()
        } else {
            format!("{head}.{tail}")
        };
        format!("{mant}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
    } else if e >= 0 {
        let split = (e + 1) as usize;
        let (int_part, frac_part) = digits.split_at(split);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    } else {
        let zeros = "0".repeat((-e - 1) as usize);
        format!("0.{zeros}{}", digits.trim_end_matches('0'))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
