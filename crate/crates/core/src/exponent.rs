//! Exact rational numbers used for potential exponents and orders.
//!
//! A potential exponent `a` lives in `(0, 1]` and the corresponding order is
//! `1/a`. Both are kept as reduced arbitrary-precision fractions so that
//! equality, truncation and ordering decisions never round.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Maximum number of significant digits accepted in a decimal literal.
pub const MAX_DECIMAL_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(BigRational);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExponentParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("decimal literal has more than {MAX_DECIMAL_DIGITS} significant digits")]
    TooManyDigits,
}

impl Exponent {
    /// `numer / denom`, reduced. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Exponent(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: i64) -> Self {
        Exponent(BigRational::from_integer(n.into()))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        Exponent(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Exponent(BigRational::zero())
    }

    pub fn one() -> Self {
        Exponent(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Reciprocal. Panics on zero.
    pub fn recip(&self) -> Self {
        Exponent(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Floor as a machine integer, saturating at `u64::MAX`; negative values give 0.
    pub fn floor_u64(&self) -> u64 {
        let f = self.floor();
        if f.is_negative() {
            0
        } else {
            f.to_u64().unwrap_or(u64::MAX)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn scale(&self, n: u64) -> Self {
        Exponent(&self.0 * BigRational::from_integer(n.into()))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Parses `p`, `p/q`, or a decimal such as `2.1` or `-0.5` into an exact
    /// rational. Decimals are limited to [`MAX_DECIMAL_DIGITS`] significant
    /// digits.
    pub fn parse_literal(text: &str) -> Result<Self, ExponentParseError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(ExponentParseError::Empty);
        }
        if let Some((n, d)) = text.split_once('/') {
            let n = parse_decimal(n.trim())?;
            let d = parse_decimal(d.trim())?;
            if d.is_zero() {
                return Err(ExponentParseError::ZeroDenominator);
            }
            return Ok(Exponent(n / d));
        }
        parse_decimal(text).map(Exponent)
    }
}

fn parse_decimal(text: &str) -> Result<BigRational, ExponentParseError> {
    let malformed = || ExponentParseError::Malformed(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(malformed());
    }
    let digits: String = format!("{int_part}{frac_part}");
    let significant = digits.trim_start_matches('0');
    if !frac_part.is_empty() && significant.trim_end_matches('0').len() > MAX_DECIMAL_DIGITS {
        return Err(ExponentParseError::TooManyDigits);
    }
    let mantissa: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| malformed())?
    };
    let scale = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

impl FromStr for Exponent {
    type Err = ExponentParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Exponent::parse_literal(s)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::integer(n)
    }
}

impl From<BigRational> for Exponent {
    fn from(r: BigRational) -> Self {
        Exponent(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Exponent> for &'a Exponent {
            type Output = Exponent;
            fn $method(self, rhs: &'a Exponent) -> Exponent {
                Exponent((&self.0).$method(&rhs.0))
            }
        }

        impl $tr for Exponent {
            type Output = Exponent;
            fn $method(self, rhs: Exponent) -> Exponent {
                Exponent(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl PartialEq<i64> for Exponent {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer((*other).into())
    }
}

impl PartialOrd<i64> for Exponent {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer((*other).into())))
    }
}
