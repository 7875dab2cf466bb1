//! Minkowski combinations, the difference body and the volume polynomial
//! `t -> V_n((1 - t) P - t P)`.
//!
//! The polynomial is written in the Bernstein-type basis
//! `V_n((1-t)P - tP) = sum_k c_k (1-t)^k t^(n-k)` with
//! `c_k = C(n, k) V(P[k], -P[n-k])`. Its coefficients are recovered by exact
//! interpolation at `t = 0, 1/n, ..., 1`, reusing the hull and volume kernel,
//! so the mixed volumes come out without a separate mixed-volume algorithm.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geom::linalg::{solve, SingularSystem};
use crate::geom::{GeomError, Point, Polytope};
use crate::scalar::{binomial, int, pow, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinkowskiError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("volume polynomial is not supported in dimension {0}; use the simplex identities")]
    NotSupported(usize),
    #[error("interpolation system is singular")]
    SingularSystem,
    #[error("Rogers-Shephard bound violated: {0}")]
    BoundViolated(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

impl From<SingularSystem> for MinkowskiError {
    fn from(_: SingularSystem) -> Self {
        MinkowskiError::SingularSystem
    }
}

pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope, MinkowskiError> {
    if p.dim() != q.dim() {
        return Err(MinkowskiError::DimensionMismatch(p.dim(), q.dim()));
    }
    let sums: Vec<Point> = p
        .vertices()
        .iter()
        .flat_map(|a| q.vertices().iter().map(move |b| a + b))
        .collect();
    Ok(Polytope::from_points(&sums, p.dim())?)
}

/// Minkowski sum of two point sets given as raw vertices (either may be a
/// single point, which plain polytopes cannot represent).
pub fn minkowski_sum_points(a: &[Point], b: &[Point], dim: usize) -> Result<Polytope, MinkowskiError> {
    let sums: Vec<Point> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
    Ok(Polytope::from_points(&sums, dim)?)
}

/// `D P = P + (-P)`.
pub fn difference_body(p: &Polytope) -> Polytope {
    let diffs: Vec<Point> = p
        .vertices()
        .iter()
        .flat_map(|a| p.vertices().iter().map(move |b| a - b))
        .collect();
    Polytope::from_points(&diffs, p.dim()).expect("difference body of a full-dimensional body")
}

/// `(1 - t) P - t P` for `t` in `[0, 1]`.
pub fn reflected_combination(p: &Polytope, t: &Rational) -> Polytope {
    let s = Rational::one() - t;
    let pts: Vec<Point> = p
        .vertices()
        .iter()
        .flat_map(|a| {
            let s = s.clone();
            p.vertices().iter().map(move |b| &a.scale(&s) - &b.scale(t))
        })
        .collect();
    Polytope::from_points(&pts, p.dim()).expect("combination of full-dimensional bodies")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumePolynomial {
    pub dim: usize,
    /// `c_k`, `k = 0..=n`, coefficient of `(1-t)^k t^(n-k)`.
    #[serde(serialize_with = "crate::io::ser_rationals")]
    pub coeffs: Vec<Rational>,
}

impl VolumePolynomial {
    /// `V(P[k], -P[n-k]) = c_k / C(n, k)`.
    pub fn mixed_volumes(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c / binomial(self.dim, k))
            .collect()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let s = Rational::one() - t;
        let n = self.dim;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * pow(&s, k) * pow(t, n - k))
            .sum()
    }

    /// `int_0^1 V_n((1-t)P - tP) dt = (1/(n+1)) sum_k V(P[k], -P[n-k])`.
    pub fn integral(&self) -> Rational {
        let total: Rational = self.mixed_volumes().into_iter().sum();
        total / int(self.dim as i64 + 1)
    }

    pub fn reversed(&self) -> VolumePolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        VolumePolynomial {
            dim: self.dim,
            coeffs,
        }
    }
}

/// Volume polynomial of the hull of raw vertices; dimensions other than 2
/// and 3 are rejected with [`MinkowskiError::NotSupported`].
pub fn volume_polynomial_of_points(points: &[Point], dim: usize) -> Result<VolumePolynomial, MinkowskiError> {
    if !(2..=3).contains(&dim) {
        return Err(MinkowskiError::NotSupported(dim));
    }
    volume_polynomial(&Polytope::from_points(points, dim)?)
}

pub fn volume_polynomial(p: &Polytope) -> Result<VolumePolynomial, MinkowskiError> {
    let n = p.dim();
    let nodes: Vec<Rational> = (0..=n).map(|k| rat(k as i64, n as i64)).collect();
    let values: Vec<Rational> = nodes
        .par_iter()
        .map(|t| reflected_combination(p, t).volume())
        .collect();
    let matrix: Vec<Vec<Rational>> = nodes
        .iter()
        .map(|t| {
            let s = Rational::one() - t;
            (0..=n).map(|k| pow(&s, k) * pow(t, n - k)).collect()
        })
        .collect();
    let coeffs = solve(matrix, values)?;
    Ok(VolumePolynomial { dim: n, coeffs })
}

/// Closed form for an `n`-simplex of volume `vol`: `V(S[k], -S[n-k]) = C(n,k) vol`,
/// hence `c_k = C(n,k)^2 vol`. Valid in every dimension.
pub fn simplex_volume_polynomial(n: usize, vol: &Rational) -> VolumePolynomial {
    VolumePolynomial {
        dim: n,
        coeffs: (0..=n).map(|k| pow(&binomial(n, k), 2) * vol).collect(),
    }
}

pub fn integral_mixed(p: &Polytope) -> Result<Rational, MinkowskiError> {
    Ok(volume_polynomial(p)?.integral())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RogersShephardReport {
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub volume: Rational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub integral: Rational,
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// `integral - V_n(P)`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub lower_gap: Rational,
    /// `2^n/(n+1) V_n(P) - integral`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub upper_gap: Rational,
}

pub fn rogers_shephard_check(p: &Polytope) -> Result<RogersShephardReport, MinkowskiError> {
    let n = p.dim();
    let volume = p.volume();
    let integral = integral_mixed(p)?;
    let upper = pow(&int(2), n) / int(n as i64 + 1) * &volume;
    let lower_gap = &integral - &volume;
    let upper_gap = &upper - &integral;
    let report = RogersShephardReport {
        lower_ok: lower_gap >= Rational::zero(),
        upper_ok: upper_gap >= Rational::zero(),
        volume,
        integral,
        lower_gap,
        upper_gap,
    };
    if !(report.lower_ok && report.upper_ok) {
        return Err(MinkowskiError::BoundViolated(format!(
            "lower gap {}, upper gap {}",
            report.lower_gap, report.upper_gap
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(raw: &[&[i64]]) -> Polytope {
        let pts: Vec<Point> = raw.iter().map(|c| Point::from_ints(c)).collect();
        Polytope::from_points(&pts, raw[0].len()).unwrap()
    }

    fn triangle() -> Polytope {
        poly(&[&[0, 0], &[1, 0], &[0, 1]])
    }

    fn tetrahedron() -> Polytope {
        poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    #[test]
    fn sum_with_origin_is_identity() {
        let t = triangle();
        let s = minkowski_sum_points(t.vertices(), &[Point::origin(2)], 2).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn difference_bodies() {
        let dt = difference_body(&triangle());
        assert_eq!(dt.facets().len(), 6);
        assert_eq!(dt.volume(), int(3));

        let cube = poly(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1],
            &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
        ]);
        let dc = difference_body(&cube);
        assert_eq!(dc, poly(&[
            &[-1, -1, -1], &[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1],
            &[1, 1, -1], &[1, -1, 1], &[-1, 1, 1], &[1, 1, 1],
        ]));

        let s = tetrahedron();
        let ds = difference_body(&s);
        assert_eq!(ds.facets().len(), 14);
        assert_eq!(ds.volume(), int(20) * s.volume());
    }

    #[test]
    fn symmetric_body_has_constant_polynomial() {
        let sq = poly(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let vp = volume_polynomial(&sq).unwrap();
        for t in [rat(1, 7), rat(1, 3), rat(5, 6)] {
            assert_eq!(vp.eval(&t), int(1));
        }
        assert_eq!(vp.mixed_volumes(), vec![int(1); 3]);
        assert_eq!(vp.integral(), int(1));
    }

    #[test]
    fn simplex_integrals() {
        assert_eq!(integral_mixed(&triangle()).unwrap(), rat(2, 3));
        assert_eq!(integral_mixed(&tetrahedron()).unwrap(), rat(1, 3));
        let vp = volume_polynomial(&tetrahedron()).unwrap();
        assert_eq!(vp, simplex_volume_polynomial(3, &rat(1, 6)));
    }

    #[test]
    fn simplex_identities_in_high_dimension() {
        for n in 2..=8 {
            let vp = simplex_volume_polynomial(n, &int(1));
            assert_eq!(vp.integral(), pow(&int(2), n) / int(n as i64 + 1));
        }
    }

    #[test]
    fn dimension_four_is_not_supported() {
        let simplex: Vec<Point> = (0..5)
            .map(|i| Point::from_ints(&[(i == 1) as i64, (i == 2) as i64, (i == 3) as i64, (i == 4) as i64]))
            .collect();
        assert_eq!(
            volume_polynomial_of_points(&simplex, 4),
            Err(MinkowskiError::NotSupported(4))
        );
    }

    #[test]
    fn rogers_shephard_cases() {
        let sq = poly(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let r = rogers_shephard_check(&sq).unwrap();
        assert_eq!(r.lower_gap, int(0));
        assert_eq!(r.upper_gap, rat(1, 3));

        let r = rogers_shephard_check(&triangle()).unwrap();
        assert_eq!(r.upper_gap, int(0));

        let quad = poly(&[&[0, 0], &[2, 0], &[2, 1], &[0, 2]]);
        let r = rogers_shephard_check(&quad).unwrap();
        assert!(r.lower_gap > int(0) && r.upper_gap > int(0));
        // pinned regression values for conv{(0,0),(2,0),(2,1),(0,2)}
        assert_eq!(r.volume, int(3));
        assert_eq!(r.integral, rat(10, 3));
    }
}
