//! Exact rational scalars.
//!
//! All probabilistic quantities in this crate are arbitrary-precision
//! rationals kept in lowest terms with a positive denominator. The scalar
//! type is [`num_rational::BigRational`], re-exported here as [`Rat`];
//! this module adds the text conventions used across the crate: parsing
//! of `"num/den"`, plain integer, and exact decimal strings, and
//! formatting that always prints an explicit denominator.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = num_rational::BigRational;

/// Builds a rational from machine integers. Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational with denominator one.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

/// Nonnegative integer power by repeated squaring.
pub fn rat_pow(base: &Rat, exp: u64) -> Rat {
    let mut result = Rat::one();
    let mut factor = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &factor;
        }
        e >>= 1;
        if e > 0 {
            factor = &factor * &factor;
        }
    }
    result
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"num/den"`, a plain integer, or an exact decimal string.
///
/// Decimal digits after the point are converted exactly: `"0.35"` is
/// `7/20`, never a binary float. A leading `+` or `-` is accepted; the
/// denominator of the `/` form must be a positive integer literal.
pub fn parse_rat(input: &str) -> Result<Rat, ParseRatError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let malformed = || ParseRatError::Malformed(input.to_string());

    if let Some((num_part, den_part)) = s.split_once('/') {
        let num = parse_signed_int(num_part).ok_or_else(malformed)?;
        if den_part.is_empty() || !den_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let den: BigInt = den_part.parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(ParseRatError::ZeroDenominator(input.to_string()));
        }
        return Ok(Rat::new(num, den));
    }

    let (sign, digits) = split_sign(s);
    match digits.split_once('.') {
        Some((whole, frac)) => {
            if whole.is_empty() && frac.is_empty() {
                return Err(malformed());
            }
            if !whole.bytes().all(|b| b.is_ascii_digit())
                || !frac.bytes().all(|b| b.is_ascii_digit())
                || frac.is_empty()
                || whole.is_empty()
            {
                return Err(malformed());
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let mantissa: BigInt = format!("{whole}{frac}").parse().map_err(|_| malformed())?;
            Ok(Rat::new(sign * mantissa, scale))
        }
        None => {
            if !digits.bytes().all(|b| b.is_ascii_digit()) || digits.is_empty() {
                return Err(malformed());
            }
            let n: BigInt = digits.parse().map_err(|_| malformed())?;
            Ok(Rat::from_integer(sign * n))
        }
    }
}

fn split_sign(s: &str) -> (BigInt, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (BigInt::from(-1), &s[1..]),
        Some(b'+') => (BigInt::one(), &s[1..]),
        _ => (BigInt::one(), s),
    }
}

fn parse_signed_int(s: &str) -> Option<BigInt> {
    let (sign, digits) = split_sign(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<BigInt>().ok().map(|n| sign * n)
}

/// Formats as `num/den` with the denominator always spelled out, so
/// `1` prints as `1/1` and `-3/5` keeps its sign on the numerator.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest binary64 value, for reporting only; verdict paths never use it.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Absolute value helper used by gap and loss computations.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// True when the numerator sign is negative (denominators are positive).
pub fn is_negative(r: &Rat) -> bool {
    r.numer().sign() == Sign::Minus
}
