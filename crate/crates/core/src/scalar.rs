//! Coefficient fields: exact rationals and IEEE doubles.
//!
//! Every computation runs in exactly one [`Mode`]; the mode is fixed by the
//! scalar type parameter, so exact and float values never meet inside one
//! polynomial or matrix.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Arithmetic mode of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::InvalidInput(format!("unknown mode `{other}`"))),
        }
    }
}

/// Relative zero threshold used in float mode unless overridden.
pub const DEFAULT_FLOAT_ZERO_TOL: f64 = 1e-8;

/// A coefficient field usable by polynomials and matrices.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn from_rational(r: &Rational) -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Absolute value as a double, used for pivoting and scaling.
    fn magnitude(&self) -> f64;

    /// Zero test relative to `scale`: exact equality for rationals,
    /// `|v| < tol * scale` for doubles.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool;

    /// Whether partial pivoting should prefer `self` over `other`.
    fn better_pivot(&self, other: &Self) -> bool;

    fn is_finite_value(&self) -> bool {
        true
    }

    /// Text form accepted back by the polynomial parser.
    fn format(&self) -> String;
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn magnitude(&self) -> f64 {
        rational_to_f64(self).abs()
    }

    fn is_negligible(&self, _scale: f64, _tol: f64) -> bool {
        self.is_zero()
    }

    // Smaller bit size keeps fraction growth down; any nonzero entry is a
    // valid pivot over Q.
    fn better_pivot(&self, other: &Self) -> bool {
        if other.is_zero() {
            return !self.is_zero();
        }
        !self.is_zero() && bit_size(self) < bit_size(other)
    }

    fn format(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        self.abs() <= tol * scale
    }

    fn better_pivot(&self, other: &Self) -> bool {
        self.abs() > other.abs()
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    fn format(&self) -> String {
        format!("{self:?}")
    }
}

fn bit_size(r: &Rational) -> u64 {
    r.numer().bits() + r.denom().bits()
}

/// Correctly scaled conversion that survives numerators and denominators far
/// beyond the `f64` range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (n, d) = (r.numer(), r.denom());
    if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
        if a.is_finite() && b.is_finite() && a.abs() < 1e300 && b < 1e300 {
            return a / b;
        }
    }
    let shift_n = n.bits().saturating_sub(60) as i64;
    let shift_d = d.bits().saturating_sub(60) as i64;
    let a = (n.abs() >> shift_n as usize).to_f64().unwrap_or(f64::MAX);
    let b = (d >> shift_d as usize).to_f64().unwrap_or(f64::MAX);
    let v = a / b * 2f64.powi((shift_n - shift_d).clamp(i32::MIN as i64, i32::MAX as i64) as i32);
    if n.is_negative() {
        -v
    } else {
        v
    }
}

/// Exact binary value of a finite double.
pub fn f64_to_rational(v: f64) -> Result<Rational> {
    Rational::from_float(v).ok_or_else(|| Error::InvalidInput(format!("non-finite value {v}")))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q`, or (when `allow_decimal`) a decimal literal such as
/// `-1.25e3`, returning the exact rational value.
pub fn parse_rational(s: &str, allow_decimal: bool) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty number".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad_number(s))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad_number(s))?;
        if q.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Ok(p) = BigInt::from_str(s) {
        return Ok(Rational::from_integer(p));
    }
    if !allow_decimal {
        return Err(Error::ModeMismatch(format!(
            "decimal literal `{s}` is only accepted in float mode"
        )));
    }
    parse_decimal(s).ok_or_else(|| bad_number(s))
}

fn bad_number(s: &str) -> Error {
    Error::InvalidInput(format!("malformed number `{s}`"))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).ok()?);
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -value } else { value })
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the numerators of `values` (zero if all vanish).
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()))
}
