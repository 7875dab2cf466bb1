//! Scalars: exact rationals for every counting and identity computation,
//! `f64` with an explicit tolerance for sampling.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse `{input}` as a rational number")]
pub struct ParseRationalError {
    pub input: String,
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, an integer, or a decimal literal (`"-1.25"`, `"3e-2"`) exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: s.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| err())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: String = format!("{whole}{frac}");
    let mut value = Rational::from_integer(all.parse::<BigInt>().map_err(|_| err())?);
    let shift = exponent - frac.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(if neg { -value } else { value })
}

/// `"p/q"`, or `"p"` when the value is an integer.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64 on its own
        let shift = q.numer().bits().max(q.denom().bits()) as i64 - 1000;
        if shift <= 0 {
            return f64::NAN;
        }
        let n = q.numer() >> shift as usize;
        let d = q.denom() >> shift as usize;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Exact binary value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Comparison tolerance for float mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(eps: f64) -> Self {
        Tolerance { eps }
    }

    /// Equality with absolute tolerance below magnitude 1 and relative above it.
    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        let scale = a.abs().max(b.abs()).max(1.0);
        (a - b).abs() <= self.eps * scale
    }
}

/// Arithmetic mode of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

/// Ordered field used by the generic linear-program solver.
pub trait Field: Num + Clone + Debug + Neg<Output = Self> {
    /// Sign of `self`; float implementations treat `|x| <= eps` as zero.
    fn sign(&self, tol: &Tolerance) -> Ordering;
    fn from_rational(q: &Rational) -> Self;
    fn as_f64(&self) -> f64;

    fn is_pos(&self, tol: &Tolerance) -> bool {
        self.sign(tol) == Ordering::Greater
    }
    fn is_neg(&self, tol: &Tolerance) -> bool {
        self.sign(tol) == Ordering::Less
    }
    fn is_zero_tol(&self, tol: &Tolerance) -> bool {
        self.sign(tol) == Ordering::Equal
    }
    fn cmp_tol(&self, other: &Self, tol: &Tolerance) -> Ordering {
        (self.clone() - other.clone()).sign(tol)
    }
}

impl Field for Rational {
    fn sign(&self, _tol: &Tolerance) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn as_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Field for f64 {
    fn sign(&self, tol: &Tolerance) -> Ordering {
        if *self > tol.eps {
            Ordering::Greater
        } else if *self < -tol.eps {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn from_rational(q: &Rational) -> Self {
        to_f64(q)
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

pub fn pow(q: &Rational, e: usize) -> Rational {
    num_traits::pow(q.clone(), e)
}

/// Integer square root test: `Some(r)` if `q = r^2` for a rational `r >= 0`.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-1.5e1").unwrap(), int(-15));
        assert_eq!(parse_rational("25e-2").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_rational(&int(3)), "3");
        assert_eq!(format_rational(&rat(-2, 6)), "-1/3");
    }

    #[test]
    fn float_tolerance_is_relative_above_one() {
        let tol = Tolerance::default();
        assert!(tol.approx_eq(1e6, 1e6 + 1e-4));
        assert!(!tol.approx_eq(1e-3, 1.1e-3));
        assert_eq!(1e-12_f64.sign(&tol), Ordering::Equal);
        assert_eq!(rat(1, 1_000_000_000_000).sign(&tol), Ordering::Greater);
    }

    #[test]
    fn binomials_and_roots() {
        assert_eq!(binomial(6, 3), int(20));
        assert_eq!(binomial(3, 4), int(0));
        assert_eq!(exact_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_sqrt(&rat(2, 1)), None);
    }
}
