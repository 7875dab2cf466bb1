//! Normal bundle of a polygon pair and the length measures it carries.
//!
//! For polygons in strongly general relative position every edge of `K + B`
//! is either an edge of `K` plus a vertex of `B` or a vertex of `K` plus an
//! edge of `B`. The bundle walks these edges in order; the first kind is flat on
//! `K` (curvature 0) and the second flat on `B` (curvature infinite). With
//! the integrand factors `1/sqrt(1+k^2)` and `k/sqrt(1+k^2)` taking their
//! limits 1, 0 and 0, 1, integrating over the bundle recovers the length
//! measures of `K` and `B`.

use serde::Serialize;

use super::{GaugeError, RadicalSum};
use crate::diameters::na_exact;
use crate::geom::polygon::ccw_angle_cmp;
use crate::geom::{Point, Polytope};
use crate::minkowski::{difference_body, minkowski_sum};
use crate::position::strongly_general_relative_position_with;
use crate::scalar::{int, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PieceKind {
    EdgeOfKVertexOfB,
    VertexOfKEdgeOfB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Curvature {
    Zero,
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundlePiece {
    pub kind: PieceKind,
    pub curvature: Curvature,
    /// Vertex indices of the face of `K`, in walking order.
    pub k_face: Vec<usize>,
    pub b_face: Vec<usize>,
    /// `(x, b)` at the start and at the end of the piece.
    #[serde(serialize_with = "ser_pair")]
    pub start: (Point, Point),
    #[serde(serialize_with = "ser_pair")]
    pub end: (Point, Point),
    /// Outer normal of the corresponding edge of `K + B`.
    #[serde(serialize_with = "crate::io::ser_point")]
    pub normal: Point,
    /// Edge vector of whichever factor moves along the piece.
    #[serde(serialize_with = "crate::io::ser_point")]
    pub edge: Point,
    pub length: RadicalSum,
}

fn ser_pair<S: serde::Serializer>(pair: &(Point, Point), s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&crate::io::point_to_value(&pair.0))?;
    t.serialize_element(&crate::io::point_to_value(&pair.1))?;
    t.end()
}

/// Endpoints of the edge of `p` with outer normal direction `u`, ccw.
fn edge_with_normal(p: &Polytope, u: &Point) -> (usize, usize) {
    let u = u.primitive();
    p.edges_ccw()
        .into_iter()
        .find(|(_, _, n)| **n == u)
        .map(|(a, b, _)| (a, b))
        .expect("support set of dimension one is an edge")
}

pub fn normal_bundle(k: &Polytope, b: &Polytope) -> Result<Vec<BundlePiece>, GaugeError> {
    if k.dim() != 2 || b.dim() != 2 {
        return Err(GaugeError::DimensionMismatch(k.dim(), b.dim()));
    }
    let sum = minkowski_sum(k, b)?;
    let report = strongly_general_relative_position_with(k, b, &sum);
    if !report.holds {
        return Err(GaugeError::NotStronglyGeneralPosition(report));
    }
    let pieces = sum
        .edges_ccw()
        .into_iter()
        .map(|(_, _, u)| {
            let fk = k.support_set(u);
            let fb = b.support_set(u);
            let (kind, curvature, k_face, b_face) = if fk.dim == 1 {
                let (i, j) = edge_with_normal(k, u);
                (PieceKind::EdgeOfKVertexOfB, Curvature::Zero, vec![i, j], fb.vertices)
            } else {
                let (i, j) = edge_with_normal(b, u);
                (PieceKind::VertexOfKEdgeOfB, Curvature::Infinite, fk.vertices, vec![i, j])
            };
            let first = |f: &[usize], body: &Polytope| body.vertex(f[0]).clone();
            let last = |f: &[usize], body: &Polytope| body.vertex(*f.last().unwrap()).clone();
            let start = (first(&k_face, k), first(&b_face, b));
            let end = (last(&k_face, k), last(&b_face, b));
            let edge = match kind {
                PieceKind::EdgeOfKVertexOfB => &end.0 - &start.0,
                PieceKind::VertexOfKEdgeOfB => &end.1 - &start.1,
            };
            BundlePiece {
                kind,
                curvature,
                k_face,
                b_face,
                start,
                end,
                normal: u.clone(),
                length: RadicalSum::sqrt(&edge.norm_sq()),
                edge,
            }
        })
        .collect();
    Ok(pieces)
}

/// Masses of a length measure on the arcs of a partition of the circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthMeasure {
    pub masses: Vec<RadicalSum>,
    pub total: RadicalSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    /// `S_1(K, .)` integrated over the bundle.
    pub k: LengthMeasure,
    /// `S_1(B, .)` integrated over the bundle.
    pub b: LengthMeasure,
    /// `S_1(K, .)` from the edges of `K`.
    pub k_direct: LengthMeasure,
    pub b_direct: LengthMeasure,
}

/// Index of the half-open arc `[arcs[i], arcs[i+1])` containing direction
/// `w`; the arcs are given by their start directions in ccw order.
fn arc_of(arcs: &[Point], w: &Point) -> usize {
    (0..arcs.len())
        .rev()
        .find(|&i| ccw_angle_cmp(&arcs[0], &arcs[i], w) != std::cmp::Ordering::Greater)
        .expect("the first arc starts at angle zero")
}

fn validate_arcs(arcs: &[Point]) -> Result<(), GaugeError> {
    if arcs.is_empty() || arcs.iter().any(|a| a.dim() != 2 || a.is_zero()) {
        return Err(GaugeError::InvalidArcs);
    }
    let increasing = arcs
        .windows(2)
        .all(|w| ccw_angle_cmp(&arcs[0], &w[0], &w[1]) == std::cmp::Ordering::Less);
    if !increasing {
        return Err(GaugeError::InvalidArcs);
    }
    Ok(())
}

fn measure(arcs: &[Point], atoms: impl Iterator<Item = (Point, RadicalSum)>) -> LengthMeasure {
    let mut masses = vec![RadicalSum::zero(); arcs.len()];
    for (w, m) in atoms {
        masses[arc_of(arcs, &w)].add(&m);
    }
    LengthMeasure {
        total: masses.iter().cloned().sum(),
        masses,
    }
}

fn direct_measure(p: &Polytope, arcs: &[Point]) -> LengthMeasure {
    measure(
        arcs,
        p.edges_ccw().into_iter().map(|(i, j, n)| {
            let e = p.vertex(j) - p.vertex(i);
            (n.clone(), RadicalSum::sqrt(&e.norm_sq()))
        }),
    )
}

pub fn length_measures(k: &Polytope, b: &Polytope, arcs: &[Point]) -> Result<MeasureReport, GaugeError> {
    validate_arcs(arcs)?;
    let bundle = normal_bundle(k, b)?;
    let weighted = |flat: Curvature| {
        measure(
            arcs,
            bundle
                .iter()
                .filter(|piece| piece.curvature == flat)
                .map(|piece| (piece.normal.clone(), piece.length.clone())),
        )
    };
    let report = MeasureReport {
        k: weighted(Curvature::Zero),
        b: weighted(Curvature::Infinite),
        k_direct: direct_measure(k, arcs),
        b_direct: direct_measure(b, arcs),
    };
    for arc in 0..arcs.len() {
        if report.k.masses[arc] != report.k_direct.masses[arc] || report.b.masses[arc] != report.b_direct.masses[arc] {
            return Err(GaugeError::MeasureMismatch { arc });
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedAreaIdentity {
    /// `V(DK, K)`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub with_k: Rational,
    /// `V(DK, -K)`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub with_reflection: Rational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub area_dk: Rational,
    pub holds: bool,
}

/// `V(DK, K) + V(DK, -K) = V_2(DK)`, with each mixed area evaluated as
/// `(1/2) sum h(DK, n_e)` over the bundle pieces of `(K, -K)` that are flat on
/// the respective body; `n_e` is the edge vector turned clockwise, so its
/// length is the edge length and the sums stay rational.
pub fn mixed_area_identity(k: &Polytope) -> Result<MixedAreaIdentity, GaugeError> {
    let dk = difference_body(k);
    let bundle = normal_bundle(k, &k.reflect())?;
    let half_sum = |flat: Curvature| -> Rational {
        bundle
            .iter()
            .filter(|p| p.curvature == flat)
            .map(|p| {
                let e = p.edge.coords();
                dk.support_value(&Point::new(vec![e[1].clone(), -e[0].clone()]))
            })
            .sum::<Rational>()
            * rat(1, 2)
    };
    let with_k = half_sum(Curvature::Zero);
    let with_reflection = half_sum(Curvature::Infinite);
    let area_dk = dk.volume();
    Ok(MixedAreaIdentity {
        holds: &with_k + &with_reflection == area_dk,
        with_k,
        with_reflection,
        area_dk,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub na: Rational,
    /// `V_2(DK) / (2 V_2(K))`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub area_ratio: Rational,
    pub is_triangle: bool,
}

/// `1 <= N_a(K) = V_2(DK) / (2 V_2(K)) <= 3`, with 3 exactly for triangles.
pub fn theorem2_bound_check(k: &Polytope) -> Result<Theorem2Report, GaugeError> {
    if k.dim() != 2 {
        return Err(GaugeError::DimensionMismatch(2, k.dim()));
    }
    let na = na_exact(k)?.value;
    let area_ratio = difference_body(k).volume() / (int(2) * k.volume());
    let is_triangle = k.vertices().len() == 3;
    let violation = if na < int(1) || na > int(3) {
        Some(format!("N_a = {na} outside [1, 3]"))
    } else if na != area_ratio {
        Some(format!("N_a = {na} differs from V(DK)/(2V(K)) = {area_ratio}"))
    } else if (na == int(3)) != is_triangle {
        Some(format!("N_a = {na} but triangle = {is_triangle}"))
    } else {
        None
    };
    if let Some(msg) = violation {
        return Err(GaugeError::BoundViolated(msg));
    }
    Ok(Theorem2Report {
        na,
        area_ratio,
        is_triangle,
    })
}
