//! The scalar abstraction shared by every evaluation routine.
//!
//! Structure constants always live in [`Q`]; evaluation routines are generic
//! over any [`Scalar`] that the rationals embed into, which lets the same
//! bracket and action code run over truncated power series during
//! deformation checks.

use std::fmt;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational numbers, the ground field of every structure.
pub type Q = BigRational;

/// A commutative ring containing the rationals.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Whether values carry several rational coordinates (powers of `t`).
    const GRADED: bool = false;

    fn from_rational(q: &Q) -> Self;

    /// Rational coordinates of the value: a single entry for `Q`, one per
    /// power of `t` for truncated series.
    fn coefficients(&self) -> Vec<Q>;

    /// `self * q` for a rational `q`.
    fn scale(&self, q: &Q) -> Self {
        let mut out = self.clone();
        out *= &Self::from_rational(q);
        out
    }

    /// `self += a * b` without consuming the operands.
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let mut t = a.clone();
        t *= b;
        *self += &t;
    }
}

impl Scalar for Q {
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }

    fn coefficients(&self) -> Vec<Q> {
        vec![self.clone()]
    }

    fn scale(&self, q: &Q) -> Self {
        self * q
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }
}

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics when `den == 0`.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn parse_int(digits: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed(whole.to_string()));
    }
    BigInt::from_str(digits).map_err(|_| ParseRationalError::Malformed(whole.to_string()))
}

/// Parses `"p/q"`, `"p"`, `"-p/q"` (ASCII `-` or U+2212 on the numerator).
pub fn parse_rational(text: &str) -> Result<Q, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (negative, body) = if let Some(rest) = s.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('\u{2212}') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('+') {
        (false, rest)
    } else {
        (false, s)
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (parse_int(n, text)?, parse_int(d, text)?),
        None => (parse_int(body, text)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    let value = Q::new(num, den);
    Ok(if negative { -value } else { value })
}

/// Canonical text form: lowest terms, `-` on the numerator, no `/1`.
pub fn format_rational(value: &Q) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Least common multiple of the denominators, always positive.
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
        .abs()
}
