//! Exact sums `sum q_i sqrt(s_i)` with rational `q_i` and squarefree integer
//! radicands, enough to compare sums of polygon edge lengths exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{format_rational, to_f64, Rational};

/// Trial division runs to this bound; a cofactor left above `TRIAL^3` could
/// hide a square of a larger prime.
const TRIAL: u64 = 100_000;

#[derive(Clone, Default, PartialEq, Eq)]
pub struct RadicalSum {
    terms: BTreeMap<BigInt, Rational>,
}

/// `n = s * k^2` with `s` squarefree.
fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut k = BigInt::one();
    let mut p = 2u64;
    while p <= TRIAL {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while rest.is_multiple_of(&bp) {
            rest /= &bp;
            e += 1;
        }
        k *= num_traits::pow(bp.clone(), e / 2);
        if e % 2 == 1 {
            s *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        k *= r;
    } else {
        s *= rest;
    }
    (s, k)
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: Rational) -> Self {
        let mut out = Self::default();
        out.add_term(BigInt::one(), q);
        out
    }

    /// `sqrt(q)` for a rational `q >= 0`.
    pub fn sqrt(q: &Rational) -> Self {
        assert!(!q.is_negative(), "square root of a negative number");
        if q.is_zero() {
            return Self::default();
        }
        // sqrt(a/b) = sqrt(a b) / b
        let (s, k) = squarefree_split(&(q.numer() * q.denom()));
        let mut out = Self::default();
        out.add_term(s, Rational::new(k, q.denom().clone()));
        out
    }

    fn add_term(&mut self, radicand: BigInt, coeff: Rational) {
        let e = self.terms.entry(radicand.clone()).or_insert_with(Rational::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&radicand);
        }
    }

    pub fn add(&mut self, other: &RadicalSum) {
        for (s, q) in &other.terms {
            self.add_term(s.clone(), q.clone());
        }
    }

    pub fn scaled(&self, q: &Rational) -> RadicalSum {
        let mut out = Self::default();
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c * q);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(s, q)| to_f64(q) * s.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }
}

impl std::ops::Sub for &RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        out.add(&rhs.scaled(&-Rational::one()));
        out
    }
}

impl std::iter::Sum for RadicalSum {
    fn sum<I: Iterator<Item = RadicalSum>>(iter: I) -> Self {
        let mut acc = RadicalSum::zero();
        for x in iter {
            acc.add(&x);
        }
        acc
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if s.is_one() {
                write!(f, "{}", format_rational(q))?;
            } else {
                write!(f, "{}*sqrt({s})", format_rational(q))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for RadicalSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn canonical_forms() {
        assert_eq!(RadicalSum::sqrt(&int(8)), RadicalSum::sqrt(&int(2)).scaled(&int(2)));
        assert_eq!(RadicalSum::sqrt(&rat(9, 4)), RadicalSum::rational(rat(3, 2)));
        assert_eq!(RadicalSum::sqrt(&rat(1, 2)).to_string(), "1/2*sqrt(2)");
        let mut s = RadicalSum::sqrt(&int(12));
        s.add(&RadicalSum::sqrt(&int(3)).scaled(&int(-2)));
        assert!(s.is_zero());
    }

    #[test]
    fn large_prime_squares_are_found() {
        let p = BigInt::from(1_000_003u64);
        let (s, k) = squarefree_split(&(&p * &p * BigInt::from(6)));
        assert_eq!((s, k), (BigInt::from(6), p));
    }
}
