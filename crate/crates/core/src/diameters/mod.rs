//! Mean number of affine diameters of a polytope.
//!
//! Every affine diameter through a generic point `z` of `P` runs between a
//! face `F = F(P, u)` and the opposite face `F(P, -u)` where `u` is a facet
//! normal of the difference body `DP`. The diameters of that family sweep the
//! slab `A(F, G) = conv(F ∪ F(P, -u))` (here `G = F(-P, u)`), so
//!
//! ```text
//! N_a(P) = 1/(2 V_n(P)) * sum over facets u of DP of V_n(A(F(P,u), F(-P,u)))
//! ```
//!
//! with each unordered family counted once from `u` and once from `-u`. The
//! same number follows from the volume polynomial as
//! `(n+1)/V_n(P) * int_0^1 V_n((1-t)P - tP) dt - 1`; [`na_exact`] computes both
//! and insists they agree in exact arithmetic.
//!
//! Slab volumes are also computed twice. The hull route takes the volume of
//! `conv(F ∪ F(P,-u))`. The slicing route uses that the slab meets the parallel
//! hyperplane at height `tau` in `(1 - tau/h) F - (tau/h) G`, so integrating
//! the `(n-1)`-volume of these slices gives
//! `V_n(A) = (1/n) h(DP,u) sum_k v(F[k], -G[n-1-k])`.
//! In the plane the sum is the length of the edge among `F`, `-G`. In space
//! a facet-vertex pair contributes the facet area, and an edge-edge pair the
//! mixed area of two segments, `|f x g| / 2` (half the parallelogram they
//! span). All lengths and areas of faces orthogonal to the integer normal `u`
//! are rational multiples of `|u|`, and the unit-normal width is
//! `<u, x - y> / |u|`, so the product stays rational.

mod montecarlo;
mod triangulation;

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::geom::lp::hull_membership;
use crate::geom::{cross2, GeomError, Face, Point, Polytope};
use crate::minkowski::{difference_body, volume_polynomial, MinkowskiError};
use crate::position::{general_relative_position_with, PositionReport};
use crate::scalar::{int, rat, Rational, Tolerance};

pub use montecarlo::{na_montecarlo, MonteCarloEstimate};
pub use triangulation::{diameters_through, planar_triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiameterError {
    #[error("P and -P are not in general relative position ({} witnesses)", .0.witnesses.len())]
    NotGeneralPosition(PositionReport),
    #[error("slab volume paths disagree: hull {hull}, slicing formula {formula}")]
    MismatchedPaths { hull: Rational, formula: Rational },
    #[error("mean diameter count paths disagree: slabs {via_slabs}, volume polynomial {via_polynomial}")]
    FormulaMismatch {
        via_slabs: Rational,
        via_polynomial: Rational,
    },
    #[error("query point is not in the interior of the body")]
    NotInterior,
    #[error("query point lies on a slab boundary")]
    OnExceptionalSet,
    #[error("only planar and spatial polytopes are supported, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Minkowski(#[from] MinkowskiError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// A facet `F + G` of `DP` with `F = F(P, u)` and `G = F(-P, u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetPair {
    /// Primitive integer outer normal `u` of the facet of `DP`.
    pub normal: Point,
    /// `F(P, u)`.
    pub first: Face,
    /// `F(P, -u) = -G`, indexed into `P`.
    pub opposite: Face,
    /// `h(DP, u)` against the unnormalised normal.
    pub width: Rational,
    /// `A(F, G) = conv(F ∪ F(P, -u))`.
    pub slab: Polytope,
}

impl FacetPair {
    pub fn second_dim(&self) -> usize {
        self.opposite.dim
    }
}

pub fn facet_pairs(p: &Polytope) -> Result<Vec<FacetPair>, DiameterError> {
    let dp = difference_body(p);
    facet_pairs_with(p, &dp)
}

fn facet_pairs_with(p: &Polytope, dp: &Polytope) -> Result<Vec<FacetPair>, DiameterError> {
    if !(2..=3).contains(&p.dim()) {
        return Err(DiameterError::UnsupportedDimension(p.dim()));
    }
    let report = general_relative_position_with(p, dp);
    if !report.holds {
        return Err(DiameterError::NotGeneralPosition(report));
    }
    dp.facets()
        .iter()
        .map(|f| {
            let u = f.normal().clone();
            let first = p.support_set(&u);
            let opposite = p.support_set(&-&u);
            let pts: Vec<Point> = first
                .vertices
                .iter()
                .chain(&opposite.vertices)
                .map(|&i| p.vertex(i).clone())
                .collect();
            let slab = Polytope::from_points(&pts, p.dim())?;
            Ok(FacetPair {
                width: dp.support_value(&u),
                normal: u,
                first,
                opposite,
                slab,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlabVolume {
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub hull: Rational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub formula: Rational,
}

/// `sum_k v(F[k], -G[n-1-k]) / |u|`, exact because every face involved is
/// orthogonal to the integer normal `u`.
fn mixed_sum_over_normal(p: &Polytope, pair: &FacetPair) -> Rational {
    let u = &pair.normal;
    let uu = u.norm_sq();
    let verts = |f: &Face| -> Vec<Point> { f.vertices.iter().map(|&i| p.vertex(i).clone()).collect() };
    let (f, g) = (verts(&pair.first), verts(&pair.opposite));
    match p.dim() {
        2 => {
            // length of the edge among F, -G; the point contributes nothing
            let edge = if pair.first.dim == 1 { &f } else { &g };
            let s = &edge[1] - &edge[0];
            (cross2(u, &s) / &uu).abs()
        }
        3 => match (pair.first.dim, pair.opposite.dim) {
            (2, 0) | (0, 2) => {
                let face = if pair.first.dim == 2 { &pair.first } else { &pair.opposite };
                let facet = p
                    .facets()
                    .iter()
                    .find(|fc| {
                        let mut vs = fc.vertices().to_vec();
                        vs.sort_unstable();
                        vs == face.vertices
                    })
                    .expect("two-dimensional face is a facet");
                (p.facet_vector_area(facet).dot(u) / &uu).abs()
            }
            (1, 1) => {
                let fe = &f[1] - &f[0];
                let ge = &g[1] - &g[0];
                (fe.cross(&ge).dot(u) / &uu).abs() * rat(1, 2)
            }
            other => unreachable!("general position excludes face dimensions {other:?}"),
        },
        d => unreachable!("dimension {d}"),
    }
}

pub fn slab_volume(p: &Polytope, pair: &FacetPair) -> Result<SlabVolume, DiameterError> {
    let hull = pair.slab.volume();
    let formula = &pair.width * mixed_sum_over_normal(p, pair) / int(p.dim() as i64);
    if hull != formula {
        return Err(DiameterError::MismatchedPaths { hull, formula });
    }
    Ok(SlabVolume { hull, formula })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiameterCount {
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub value: Rational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub via_slabs: Rational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub via_polynomial: Rational,
    #[serde(serialize_with = "crate::io::ser_rationals")]
    pub slab_volumes: Vec<Rational>,
}

pub fn na_exact(p: &Polytope) -> Result<DiameterCount, DiameterError> {
    let pairs = facet_pairs(p)?;
    let n = p.dim();
    let volume = p.volume();
    let slab_volumes = pairs
        .iter()
        .map(|pair| slab_volume(p, pair).map(|s| s.hull))
        .collect::<Result<Vec<_>, _>>()?;
    let total: Rational = slab_volumes.iter().sum();
    let via_slabs = total / (int(2) * &volume);
    let integral = volume_polynomial(p)?.integral();
    let via_polynomial = int(n as i64 + 1) / &volume * integral - int(1);
    if via_slabs != via_polynomial {
        return Err(DiameterError::FormulaMismatch {
            via_slabs,
            via_polynomial,
        });
    }
    Ok(DiameterCount {
        value: via_slabs.clone(),
        via_slabs,
        via_polynomial,
        slab_volumes,
    })
}

/// Precomputed slabs for repeated point queries.
#[derive(Debug, Clone)]
pub struct DiameterCounter {
    body: Polytope,
    pairs: Vec<FacetPair>,
    body_halfspaces: Vec<(Vec<f64>, f64)>,
    slab_halfspaces: Vec<Vec<(Vec<f64>, f64)>>,
}

enum Side {
    Inside,
    Boundary,
    Outside,
}

fn classify_f64(halfspaces: &[(Vec<f64>, f64)], z: &[f64], tol: &Tolerance) -> Side {
    let mut boundary = false;
    for (n, c) in halfspaces {
        let s: f64 = n.iter().zip(z).map(|(a, b)| a * b).sum::<f64>() - c;
        if s > tol.eps {
            return Side::Outside;
        }
        if s >= -tol.eps {
            boundary = true;
        }
    }
    if boundary {
        Side::Boundary
    } else {
        Side::Inside
    }
}

impl DiameterCounter {
    pub fn new(p: &Polytope) -> Result<Self, DiameterError> {
        let pairs = facet_pairs(p)?;
        let slab_halfspaces = pairs.iter().map(|pair| pair.slab.halfspaces_f64()).collect();
        Ok(DiameterCounter {
            body: p.clone(),
            body_halfspaces: p.halfspaces_f64(),
            pairs,
            slab_halfspaces,
        })
    }

    pub fn body(&self) -> &Polytope {
        &self.body
    }

    pub fn pairs(&self) -> &[FacetPair] {
        &self.pairs
    }

    /// Exact count `(1/2) #{pairs with z in A(F, G)}`, with slab membership
    /// decided by a point-in-hull linear program and boundary hits reported.
    pub fn count_exact(&self, z: &Point) -> Result<u32, DiameterError> {
        if !self.body.contains_interior(z) {
            return Err(DiameterError::NotInterior);
        }
        let tol = Tolerance::default();
        let mut ordered = 0u32;
        for pair in &self.pairs {
            let verts: Vec<Vec<Rational>> = pair.slab.vertices().iter().map(|v| v.coords().to_vec()).collect();
            if hull_membership(&verts, z.coords(), &tol).is_none() {
                continue;
            }
            if pair.slab.facets().iter().any(|f| &f.normal().dot(z) == f.offset()) {
                return Err(DiameterError::OnExceptionalSet);
            }
            ordered += 1;
        }
        debug_assert!(ordered % 2 == 0);
        Ok(ordered / 2)
    }

    /// Float count used by sampling; points within `eps` of a slab boundary
    /// are reported as exceptional.
    pub fn count_f64(&self, z: &[f64], tol: &Tolerance) -> Result<u32, DiameterError> {
        match classify_f64(&self.body_halfspaces, z, tol) {
            Side::Inside => {}
            _ => return Err(DiameterError::NotInterior),
        }
        let mut ordered = 0u32;
        for hs in &self.slab_halfspaces {
            match classify_f64(hs, z, tol) {
                Side::Inside => ordered += 1,
                Side::Boundary => return Err(DiameterError::OnExceptionalSet),
                Side::Outside => {}
            }
        }
        if ordered % 2 == 1 {
            return Err(DiameterError::OnExceptionalSet);
        }
        Ok(ordered / 2)
    }

    pub(crate) fn inside_body_f64(&self, z: &[f64], tol: &Tolerance) -> bool {
        matches!(classify_f64(&self.body_halfspaces, z, tol), Side::Inside)
    }
}

/// Number of affine diameters through an interior point `z`.
pub fn na_point(p: &Polytope, z: &Point) -> Result<u32, DiameterError> {
    DiameterCounter::new(p)?.count_exact(z)
}
