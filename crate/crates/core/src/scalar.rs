//! Scalar types used as coefficients.
//!
//! Every algebraic routine in the crate is generic over [`Scalar`]. The exact
//! rational type [`Rational`] is the default everywhere equality matters
//! (annihilators, minimal polynomials, eigenvalue collisions). Machine integers
//! work for the integral constructions and `f64` gives a fast approximate view.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number, always reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Coefficient ring for group-algebra elements, matrices and polynomials.
///
/// Division is only used by routines that need a field (elimination,
/// polynomial division); with integer scalars those routines are only correct
/// when every division is exact.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + std::ops::Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer is representable")
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialEq + Num + std::ops::Neg<Output = T> + FromPrimitive + Send + Sync + 'static
{
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"`, `"p"` or a plain decimal like `"0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = || Error::ParseRational(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if s.contains('/') {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        if int_digits.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        return Ok(Rational::new(num, den));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Machine-readable form: always `"p/q"`, reduced, positive denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

/// Lossy conversion used for sampling and float views.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Resource limits for operations whose cost grows like n!.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest n for which S_n is enumerated or dense n!-sized data is built.
    pub algebra_max_n: usize,
    /// Largest square matrix handed to the characteristic polynomial oracle.
    pub matrix_max_dim: usize,
    /// Largest n for minimal polynomial computation on the n! x n! matrix.
    pub minpoly_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            algebra_max_n: 8,
            matrix_max_dim: 120,
            minpoly_max_n: 5,
        }
    }
}

/// Environment variable that overrides [`Limits::algebra_max_n`].
pub const ALGEBRA_CAP_ENV: &str = "CYCLESHUFFLE_MAX_N";

impl Limits {
    /// Defaults, with the algebra cap taken from `CYCLESHUFFLE_MAX_N` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(ALGEBRA_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.algebra_max_n = n;
        }
        limits
    }

    pub fn check_algebra(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.algebra_max_n {
            return Err(Error::CapExceeded { what, n, limit: self.algebra_max_n });
        }
        Ok(())
    }

    pub fn check_matrix(&self, what: &'static str, dim: usize) -> Result<()> {
        if dim > self.matrix_max_dim {
            return Err(Error::CapExceeded { what, n: dim, limit: self.matrix_max_dim });
        }
        Ok(())
    }

    pub fn check_minpoly(&self, n: usize) -> Result<()> {
        if n > self.minpoly_max_n {
            return Err(Error::CapExceeded { what: "minimal polynomial", n, limit: self.minpoly_max_n });
        }
        Ok(())
    }
}
