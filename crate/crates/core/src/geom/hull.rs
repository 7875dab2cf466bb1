//! Exact convex hulls in the plane and in space.
//!
//! The planar hull is Andrew's monotone chain with strict turns, so collinear
//! boundary points are dropped. The spatial hull is incremental insertion over
//! triangles with exact orientation tests; a point only sees triangles it is
//! strictly above. Coplanar triangles are merged afterwards into maximal facets
//! and the vertex set is recovered as the points lying on three or more facet
//! planes, which removes points in the relative interior of edges and facets.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{Signed, Zero};

use super::point::{orient2d, orient3d, Point};
use super::polytope::{Facet, Polytope};
use super::GeomError;
use crate::scalar::Rational;

pub fn convex_hull(points: &[Point], dim: usize) -> Result<Polytope, GeomError> {
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(GeomError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let unique: Vec<Point> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    match dim {
        2 => hull2d(&unique),
        3 => hull3d(&unique),
        d => Err(GeomError::UnsupportedDimension(d)),
    }
}

/// Counter-clockwise cycle of the extreme points of a sorted, deduplicated set.
pub(crate) fn monotone_chain(sorted: &[Point]) -> Vec<Point> {
    if sorted.len() < 3 {
        return sorted.to_vec();
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in sorted {
        while lower.len() >= 2
            && !orient2d(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in sorted.iter().rev() {
        while upper.len() >= 2
            && !orient2d(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull2d(unique: &[Point]) -> Result<Polytope, GeomError> {
    let cycle = monotone_chain(unique);
    if cycle.len() < 3 {
        return Err(GeomError::DegenerateInput);
    }
    let m = cycle.len();
    let facets = (0..m)
        .map(|i| {
            let a = &cycle[i];
            let b = &cycle[(i + 1) % m];
            let e = b - a;
            // outward normal of a ccw edge points to its right
            let normal = Point::new(vec![e.coords()[1].clone(), -e.coords()[0].clone()]);
            (normal.primitive(), vec![a.clone(), b.clone()])
        })
        .collect();
    Ok(Polytope::assemble(2, cycle, facets))
}

struct Tri {
    v: [usize; 3],
    normal: Point,
    offset: Rational,
}

impl Tri {
    fn new(pts: &[Point], v: [usize; 3]) -> Tri {
        let normal = (&pts[v[1]] - &pts[v[0]]).cross(&(&pts[v[2]] - &pts[v[0]]));
        let offset = normal.dot(&pts[v[0]]);
        Tri { v, normal, offset }
    }

    fn above(&self, p: &Point) -> bool {
        (self.normal.dot(p) - &self.offset).is_positive()
    }
}

fn hull3d(pts: &[Point]) -> Result<Polytope, GeomError> {
    let n = pts.len();
    if n < 4 {
        return Err(GeomError::DegenerateInput);
    }
    let i0 = 0;
    let i1 = 1;
    let i2 = (2..n)
        .find(|&i| !(&pts[i1] - &pts[i0]).cross(&(&pts[i] - &pts[i0])).is_zero())
        .ok_or(GeomError::DegenerateInput)?;
    let i3 = (2..n)
        .find(|&i| i != i2 && !orient3d(&pts[i0], &pts[i1], &pts[i2], &pts[i]).is_zero())
        .ok_or(GeomError::DegenerateInput)?;

    let seed = [i0, i1, i2, i3];
    let inner = Point::centroid(&seed.map(|i| pts[i].clone()));
    let mut tris: Vec<Option<Tri>> = Vec::new();
    for [a, b, c] in [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]] {
        let mut t = Tri::new(pts, [a, b, c]);
        if t.above(&inner) {
            t = Tri::new(pts, [a, c, b]);
        }
        tris.push(Some(t));
    }

    for (p, point) in pts.iter().enumerate() {
        if seed.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = tris
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.as_ref().filter(|t| t.above(point)).map(|_| i))
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        for &i in &visible {
            let v = tris[i].as_ref().unwrap().v;
            for k in 0..3 {
                edges.insert((v[k], v[(k + 1) % 3]));
            }
        }
        let mut horizon: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| !edges.contains(&(b, a)))
            .collect();
        horizon.sort_unstable();
        for &i in &visible {
            tris[i] = None;
        }
        for (a, b) in horizon {
            tris.push(Some(Tri::new(pts, [a, b, p])));
        }
    }

    // Merge coplanar triangles by canonical plane.
    let mut planes: BTreeMap<(Point, Rational), BTreeSet<usize>> = BTreeMap::new();
    for t in tris.iter().flatten() {
        let normal = t.normal.primitive();
        let offset = normal.dot(&pts[t.v[0]]);
        planes.entry((normal, offset)).or_default().extend(t.v);
    }
    let on_plane = |i: usize| {
        planes
            .keys()
            .filter(|(nrm, off)| &nrm.dot(&pts[i]) == off)
            .count()
    };
    let candidates: BTreeSet<usize> = planes.values().flatten().copied().collect();
    let vertex_ids: Vec<usize> = candidates.into_iter().filter(|&i| on_plane(i) >= 3).collect();
    let vertices: Vec<Point> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
    let facets = planes
        .into_keys()
        .map(|(normal, offset)| {
            let incident: Vec<Point> = vertices
                .iter()
                .filter(|v| normal.dot(v) == offset)
                .cloned()
                .collect();
            (normal, incident)
        })
        .collect();
    Ok(Polytope::assemble(3, vertices, facets))
}

/// Orders the vertices of a planar convex polygon in space counter-clockwise
/// as seen from the tip of `normal`.
pub(crate) fn order_facet(normal: &Point, pts: &[Point]) -> Vec<usize> {
    let c = normal.coords();
    let drop = (0..3)
        .max_by(|&a, &b| c[a].abs().cmp(&c[b].abs()))
        .unwrap();
    let (u, v) = ((drop + 1) % 3, (drop + 2) % 3);
    let mut projected: Vec<(Point, usize)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            (
                Point::new(vec![p.coords()[u].clone(), p.coords()[v].clone()]),
                i,
            )
        })
        .collect();
    projected.sort();
    let sorted: Vec<Point> = projected.iter().map(|(p, _)| p.clone()).collect();
    let cycle = monotone_chain(&sorted);
    let mut order: Vec<usize> = cycle
        .iter()
        .map(|q| projected.iter().find(|(p, _)| p == q).unwrap().1)
        .collect();
    if c[drop].is_negative() {
        order.reverse();
    }
    order
}

impl Facet {
    pub(crate) fn from_parts(normal: Point, offset: Rational, vertices: Vec<usize>) -> Facet {
        Facet {
            normal,
            offset,
            vertices,
        }
    }
}
