use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{format_rational, int, to_f64, Rational};

/// A point (or vector) with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Point) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    /// `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        let s = Rational::one() - t;
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a * &s + b * t)
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    /// 3D cross product.
    pub fn cross(&self, other: &Point) -> Point {
        assert!(self.dim() == 3 && other.dim() == 3, "cross product needs 3D");
        let (a, b) = (&self.0, &other.0);
        Point(vec![
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ])
    }

    /// Positive rescaling to a primitive integer vector. Zero stays zero.
    pub fn primitive(&self) -> Point {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = ints
            .iter()
            .filter(|c| !c.is_zero())
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Point(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &gcd))
                .collect(),
        )
    }

    pub fn centroid(points: &[Point]) -> Point {
        assert!(!points.is_empty());
        let n = Rational::from_integer(BigInt::from(points.len()));
        let mut acc = Point::origin(points[0].dim());
        for p in points {
            acc = &acc + p;
        }
        acc.scale(&(Rational::one() / n))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(self.0.iter().map(|c| -c).collect())
    }
}

/// Affine dimension of a finite point set (`-1` is never returned; an empty
/// set reports 0).
pub fn affine_dim(points: &[&Point]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| (*p - base).into_coords())
        .collect();
    rank(rows)
}

/// Rank of a rational matrix given by rows.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * p;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Sign of the 2D orientation determinant of `(b - a, c - a)`.
pub fn orient2d(a: &Point, b: &Point, c: &Point) -> Rational {
    let (a, b, c) = (a.coords(), b.coords(), c.coords());
    (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
}

/// `det(b - a, c - a, d - a)`.
pub fn orient3d(a: &Point, b: &Point, c: &Point, d: &Point) -> Rational {
    let n = (b - a).cross(&(c - a));
    n.dot(&(d - a))
}

/// 2D cross product `u x v`.
pub fn cross2(u: &Point, v: &Point) -> Rational {
    &u.coords()[0] * &v.coords()[1] - &u.coords()[1] * &v.coords()[0]
}
