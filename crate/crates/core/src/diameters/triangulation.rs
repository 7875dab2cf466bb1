//! Planar pictures: the triangulation of `DP` by the slabs, and the affine
//! diameters through a given point.

use super::{facet_pairs, DiameterError};
use crate::geom::{orient2d, Point, Polytope};
use crate::scalar::Rational;

/// The `2m` triangles `conv{0, a - v, b - v}` and their reflections, one pair
/// per edge `[a, b]` of an `m`-gon in general position, with `v` the vertex
/// opposite the edge. They tile `DP`; each is listed counter-clockwise.
pub fn planar_triangulation(p: &Polytope) -> Result<Vec<[Point; 3]>, DiameterError> {
    if p.dim() != 2 {
        return Err(DiameterError::UnsupportedDimension(p.dim()));
    }
    // ensures each edge faces a single vertex
    facet_pairs(p)?;
    let o = Point::origin(2);
    let mut out = Vec::with_capacity(2 * p.vertices().len());
    for (a, b, u) in p.edges_ccw() {
        let opposite = p.support_set(&-u);
        let v = p.vertex(opposite.vertices[0]);
        let (a, b) = (p.vertex(a), p.vertex(b));
        out.push([o.clone(), a - v, b - v]);
        out.push([o.clone(), v - a, v - b]);
    }
    debug_assert!(out.iter().all(|t| orient2d(&t[0], &t[1], &t[2]) > Rational::from_integer(0.into())));
    Ok(out)
}

/// Affine diameters of a planar polygon through the interior point `z`, as
/// segments from a vertex to the point where the chord meets the opposite edge.
pub fn diameters_through(p: &Polytope, z: &Point) -> Result<Vec<(Point, Point)>, DiameterError> {
    if p.dim() != 2 {
        return Err(DiameterError::UnsupportedDimension(p.dim()));
    }
    if !p.contains_interior(z) {
        return Err(DiameterError::NotInterior);
    }
    let mut out = Vec::new();
    for pair in facet_pairs(p)? {
        if pair.first.dim != 1 || !pair.slab.contains(z) {
            continue;
        }
        let v = p.vertex(pair.opposite.vertices[0]);
        let u = &pair.normal;
        let h = pair.slab.support_value(u);
        let dir = z - v;
        let s = (h - u.dot(v)) / u.dot(&dir);
        out.push((v.clone(), v + &dir.scale(&s)));
    }
    Ok(out)
}
