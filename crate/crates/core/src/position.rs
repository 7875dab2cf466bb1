//! General and strongly general relative position.
//!
//! `P` and `-P` are in general relative position when every direction `u`
//! with `dim F(DP, u) = n - 1` has `dim F(P, u) + dim F(P, -u) = n - 1`. Only
//! facet normals of `DP` qualify, so the check is complete after one pass over
//! the facets of the difference body.
//!
//! `K` and `B` are in strongly general relative position when
//! `dim F(K, u) + dim F(B, u) = dim F(K + B, u)` for every `u`. Face
//! dimensions of `K`, `B` and `K + B` are constant on the relative interior of
//! each normal cone of `K + B`, so one direction per face of `K + B` suffices.
//! The checks are exact only; with tolerances a dimension count could flip.

use serde::Serialize;

use crate::geom::{Point, Polytope};
use crate::minkowski::{difference_body, minkowski_sum, MinkowskiError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "crate::io::ser_point")]
    pub direction: Point,
    /// `dim F(K, u)` (or `dim F(P, u)`).
    pub dim_first: usize,
    /// `dim F(B, u)` (or `dim F(-P, u)`).
    pub dim_second: usize,
    /// `dim F(K + B, u)` (or `dim F(DP, u)`).
    pub dim_sum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositionReport {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl PositionReport {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        PositionReport {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

pub fn general_relative_position(p: &Polytope) -> PositionReport {
    general_relative_position_with(p, &difference_body(p))
}

/// Same check against a precomputed difference body.
pub fn general_relative_position_with(p: &Polytope, dp: &Polytope) -> PositionReport {
    let n = p.dim();
    let witnesses = dp
        .facets()
        .iter()
        .filter_map(|f| {
            let u = f.normal();
            let dim_first = p.support_set(u).dim;
            let dim_second = p.support_set(&-u).dim;
            (dim_first + dim_second != n - 1).then(|| Witness {
                direction: u.clone(),
                dim_first,
                dim_second,
                dim_sum: n - 1,
            })
        })
        .collect();
    PositionReport::from_witnesses(witnesses)
}

pub fn strongly_general_relative_position(
    k: &Polytope,
    b: &Polytope,
) -> Result<PositionReport, MinkowskiError> {
    let sum = minkowski_sum(k, b)?;
    Ok(strongly_general_relative_position_with(k, b, &sum))
}

pub fn strongly_general_relative_position_with(k: &Polytope, b: &Polytope, sum: &Polytope) -> PositionReport {
    let witnesses = sum
        .faces()
        .into_iter()
        .filter_map(|face| {
            let u = &face.normal;
            let dim_first = k.support_set(u).dim;
            let dim_second = b.support_set(u).dim;
            (dim_first + dim_second != face.dim).then(|| Witness {
                direction: u.clone(),
                dim_first,
                dim_second,
                dim_sum: face.dim,
            })
        })
        .collect();
    PositionReport::from_witnesses(witnesses)
}
