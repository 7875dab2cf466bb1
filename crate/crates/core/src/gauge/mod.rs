//! Gauge distance, projection and normal with respect to a convex gauge body.
//!
//! For `o` in the interior of `B`, `d(K, B, x) = min { r >= 0 : x in K + rB }`.
//! Writing `x = sum a_i k_i + r sum b_j v_j` over the vertices of `K` and `B`
//! and substituting `g_j = r b_j` turns the bilinear problem into the linear
//! program
//!
//! ```text
//! min sum g_j   s.t.  sum a_i k_i + sum g_j v_j = x,  sum a_i = 1,  a, g >= 0
//! ```
//!
//! whose optimum gives `d = sum g_j`, the projection `p = sum a_i k_i` and the
//! gauge normal `u = (x - p) / d`, a boundary point of `B`.

mod bundle;
mod lipschitz;
mod radical;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::geom::lp::{solve_lp, LinearProgram, LpError};
use crate::geom::{Point, Polytope};
use crate::scalar::{Field, Rational, Tolerance};

pub use bundle::{
    length_measures, mixed_area_identity, normal_bundle, theorem2_bound_check, BundlePiece, Curvature,
    LengthMeasure, MeasureReport, MixedAreaIdentity, PieceKind, Theorem2Report,
};
pub use lipschitz::{lipschitz_bound, lipschitz_probe, LipschitzBound, LipschitzProbe};
pub use radical::RadicalSum;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaugeError {
    #[error("the origin is not an interior point of the gauge body")]
    OriginNotInterior,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("gauge projection is not unique; the bodies are not in strongly general relative position")]
    GaugeDegenerate,
    #[error("K and B are not in strongly general relative position")]
    NotStronglyGeneralPosition(crate::position::PositionReport),
    #[error("arcs must be nonzero planar directions in strictly increasing ccw order")]
    InvalidArcs,
    #[error("length measures disagree on arc {arc}")]
    MeasureMismatch { arc: usize },
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("{0}")]
    Lp(#[from] LpError),
    #[error(transparent)]
    Diameter(#[from] crate::diameters::DiameterError),
    #[error(transparent)]
    Minkowski(#[from] crate::minkowski::MinkowskiError),
}

/// Gauge distance `d`, projection `p` and, for `d > 0`, gauge normal `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeSolution<F> {
    pub d: F,
    pub p: Vec<F>,
    pub u: Option<Vec<F>>,
}

fn gauge_program<F: Field>(k: &[Vec<F>], b: &[Vec<F>], x: &[F]) -> LinearProgram<F> {
    let n = x.len();
    let mut constraints: Vec<Vec<F>> = (0..n)
        .map(|c| k.iter().chain(b).map(|v| v[c].clone()).collect())
        .collect();
    constraints.push(
        std::iter::repeat(F::one())
            .take(k.len())
            .chain(std::iter::repeat(F::zero()).take(b.len()))
            .collect(),
    );
    let mut rhs = x.to_vec();
    rhs.push(F::one());
    LinearProgram {
        objective: std::iter::repeat(F::zero())
            .take(k.len())
            .chain(std::iter::repeat(F::one()).take(b.len()))
            .collect(),
        constraints,
        rhs,
    }
}

fn combine<F: Field>(weights: &[F], verts: &[Vec<F>], n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (w, v) in weights.iter().zip(verts) {
        for (o, c) in out.iter_mut().zip(v) {
            *o = o.clone() + w.clone() * c.clone();
        }
    }
    out
}

/// Gauge LP over raw vertex lists in any ordered field, without the
/// uniqueness check.
pub fn gauge_solve<F: Field>(k: &[Vec<F>], b: &[Vec<F>], x: &[F], tol: &Tolerance) -> Result<GaugeSolution<F>, GaugeError> {
    let n = x.len();
    let sol = solve_lp(&gauge_program(k, b, x), tol)?;
    let p = combine(&sol.x[..k.len()], k, n);
    let d = sol.value;
    let u = (!d.is_zero_tol(tol)).then(|| {
        x.iter()
            .zip(&p)
            .map(|(xi, pi)| (xi.clone() - pi.clone()) / d.clone())
            .collect()
    });
    Ok(GaugeSolution { d, p, u })
}

fn vertex_rows(p: &Polytope) -> Vec<Vec<Rational>> {
    p.vertices().iter().map(|v| v.coords().to_vec()).collect()
}

fn check_inputs(k: &Polytope, b: &Polytope, x_dim: usize) -> Result<(), GaugeError> {
    if k.dim() != b.dim() {
        return Err(GaugeError::DimensionMismatch(k.dim(), b.dim()));
    }
    if x_dim != k.dim() {
        return Err(GaugeError::DimensionMismatch(k.dim(), x_dim));
    }
    if !b.contains_interior(&Point::origin(b.dim())) {
        return Err(GaugeError::OriginNotInterior);
    }
    Ok(())
}

/// Exact gauge distance, projection and normal. The projection is certified
/// unique by minimising and maximising each of its coordinates over the
/// optimal face of the program.
pub fn gauge_distance(k: &Polytope, b: &Polytope, x: &Point) -> Result<GaugeSolution<Rational>, GaugeError> {
    check_inputs(k, b, x.dim())?;
    let tol = Tolerance::default();
    let (kv, bv) = (vertex_rows(k), vertex_rows(b));
    let sol = gauge_solve(&kv, &bv, x.coords(), &tol)?;
    if !sol.d.is_zero() {
        let mut lp = gauge_program(&kv, &bv, x.coords());
        lp.constraints.push(lp.objective.clone());
        lp.rhs.push(sol.d.clone());
        for c in 0..x.dim() {
            for sign in [Rational::one(), -Rational::one()] {
                lp.objective = kv
                    .iter()
                    .map(|v| &v[c] * &sign)
                    .chain(std::iter::repeat(Rational::zero()).take(bv.len()))
                    .collect();
                let opt = solve_lp(&lp, &tol)?;
                if opt.value != &sol.p[c] * &sign {
                    return Err(GaugeError::GaugeDegenerate);
                }
            }
        }
    }
    Ok(sol)
}

pub fn gauge_distance_f64(k: &Polytope, b: &Polytope, x: &[f64], tol: &Tolerance) -> Result<GaugeSolution<f64>, GaugeError> {
    check_inputs(k, b, x.len())?;
    let kv: Vec<Vec<f64>> = k.vertices().iter().map(Point::to_f64).collect();
    let bv: Vec<Vec<f64>> = b.vertices().iter().map(Point::to_f64).collect();
    gauge_solve(&kv, &bv, x, tol)
}

impl GaugeSolution<Rational> {
    pub fn projection(&self) -> Point {
        Point::new(self.p.clone())
    }

    pub fn normal(&self) -> Option<Point> {
        self.u.clone().map(Point::new)
    }
}

#[cfg(test)]
mod tests;
