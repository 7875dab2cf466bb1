use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::hull::{convex_hull, order_facet};
use super::point::{affine_dim, cross2, Point};
use super::GeomError;
use crate::scalar::{rat, Rational};

/// A facet `{x : <normal, x> = offset}` with `<normal, x> <= offset` on the body.
///
/// The normal is the primitive integer multiple of the outer normal. Vertex
/// indices are counter-clockwise seen from outside (in the plane: the edge
/// runs `vertices[0] -> vertices[1]` with the body on its left).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub(crate) normal: Point,
    pub(crate) offset: Rational,
    pub(crate) vertices: Vec<usize>,
}

impl Facet {
    pub fn normal(&self) -> &Point {
        &self.normal
    }
    pub fn offset(&self) -> &Rational {
        &self.offset
    }
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

/// A face `F(P, u)`: the vertices maximising `<normal, .>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
    #[serde(serialize_with = "crate::io::ser_point")]
    pub normal: Point,
}

/// Full-dimensional convex polytope in the plane or in space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
}

impl Polytope {
    pub fn from_points(points: &[Point], dim: usize) -> Result<Polytope, GeomError> {
        convex_hull(points, dim)
    }

    pub(crate) fn assemble(
        dim: usize,
        vertices: Vec<Point>,
        facets: Vec<(Point, Vec<Point>)>,
    ) -> Polytope {
        let mut sorted = vertices;
        sorted.sort();
        let index = |p: &Point| sorted.binary_search(p).expect("facet point is a vertex");
        let mut out: Vec<Facet> = facets
            .into_iter()
            .map(|(normal, pts)| {
                let offset = normal.dot(&pts[0]);
                let vertices = if dim == 2 {
                    pts.iter().map(index).collect()
                } else {
                    order_facet(&normal, &pts)
                        .into_iter()
                        .map(|i| index(&pts[i]))
                        .collect()
                };
                Facet::from_parts(normal, offset, vertices)
            })
            .collect();
        out.sort_by(|a, b| a.normal.cmp(&b.normal));
        let poly = Polytope {
            dim,
            vertices: sorted,
            facets: out,
        };
        debug_assert!(poly.check_invariants());
        poly
    }

    fn check_invariants(&self) -> bool {
        let facets_ok = self.facets.iter().all(|f| {
            let on: Vec<&Point> = f.vertices.iter().map(|&i| &self.vertices[i]).collect();
            affine_dim(&on) == self.dim - 1
                && self.vertices.iter().enumerate().all(|(i, v)| {
                    let s = f.normal.dot(v);
                    if f.vertices.contains(&i) {
                        s == f.offset
                    } else {
                        s < f.offset
                    }
                })
        });
        let vertices_ok = (0..self.vertices.len()).all(|i| {
            self.facets.iter().filter(|f| f.vertices.contains(&i)).count() >= self.dim
        });
        facets_ok && vertices_ok
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// Counter-clockwise vertex cycle of a polygon, starting at vertex 0.
    pub fn cycle(&self) -> Vec<usize> {
        assert_eq!(self.dim, 2, "cycle is defined for polygons");
        let m = self.vertices.len();
        let mut next = vec![usize::MAX; m];
        for f in &self.facets {
            next[f.vertices[0]] = f.vertices[1];
        }
        let mut out = Vec::with_capacity(m);
        let mut cur = 0;
        for _ in 0..m {
            out.push(cur);
            cur = next[cur];
        }
        out
    }

    /// Ccw edges `(a, b, outer normal)` of a polygon, following [`Self::cycle`].
    pub fn edges_ccw(&self) -> Vec<(usize, usize, &Point)> {
        let cycle = self.cycle();
        cycle
            .iter()
            .map(|&a| {
                let f = self.facets.iter().find(|f| f.vertices[0] == a).unwrap();
                (a, f.vertices[1], &f.normal)
            })
            .collect()
    }

    /// Support function `h(P, u)`.
    pub fn support_value(&self, u: &Point) -> Rational {
        self.vertices
            .iter()
            .map(|v| u.dot(v))
            .max()
            .expect("polytope has vertices")
    }

    /// Width `h(P, u) + h(P, -u)` against an unnormalised direction.
    pub fn width(&self, u: &Point) -> Rational {
        self.support_value(u) + self.support_value(&-u)
    }

    /// Face `F(P, u)`.
    pub fn support_set(&self, u: &Point) -> Face {
        assert!(!u.is_zero(), "support direction must be nonzero");
        let h = self.support_value(u);
        let vertices: Vec<usize> = (0..self.vertices.len())
            .filter(|&i| u.dot(&self.vertices[i]) == h)
            .collect();
        let pts: Vec<&Point> = vertices.iter().map(|&i| &self.vertices[i]).collect();
        Face {
            dim: affine_dim(&pts),
            vertices,
            normal: u.clone(),
        }
    }

    /// Exact volume by fan triangulation from vertex 0.
    pub fn volume(&self) -> Rational {
        let apex = &self.vertices[0];
        let mut fan = Rational::zero();
        match self.dim {
            2 => {
                for (a, b, _) in self.edges_ccw() {
                    let t = cross2(&(&self.vertices[a] - apex), &(&self.vertices[b] - apex));
                    debug_assert!(!t.is_negative());
                    fan += t;
                }
                fan / rat(2, 1)
            }
            3 => {
                for f in &self.facets {
                    if f.vertices.contains(&0) {
                        continue;
                    }
                    let c = &f.vertices;
                    let first = &self.vertices[c[0]] - apex;
                    for w in c[1..].windows(2) {
                        let t = first.dot(
                            &(&self.vertices[w[0]] - apex).cross(&(&self.vertices[w[1]] - apex)),
                        );
                        debug_assert!(t.is_positive());
                        fan += t;
                    }
                }
                let vol = fan / rat(6, 1);
                debug_assert_eq!(vol, self.divergence_volume());
                vol
            }
            _ => unreachable!("only planar and spatial polytopes are constructed"),
        }
    }

    /// Volume from the divergence theorem over facets, cross-checking the fan.
    fn divergence_volume(&self) -> Rational {
        let mut acc = Rational::zero();
        for f in &self.facets {
            let c = &f.vertices;
            let mut area = Point::origin(3);
            for k in 0..c.len() {
                let a = &self.vertices[c[k]];
                let b = &self.vertices[c[(k + 1) % c.len()]];
                area = &area + &a.cross(b);
            }
            acc += self.vertices[c[0]].dot(&area);
        }
        acc / rat(6, 1)
    }

    /// Vector area `sum v_i x v_{i+1} / 2` of a spatial facet; parallel to its
    /// outer normal with length equal to the facet area.
    pub fn facet_vector_area(&self, facet: &Facet) -> Point {
        assert_eq!(self.dim, 3);
        let c = &facet.vertices;
        let mut area = Point::origin(3);
        for k in 0..c.len() {
            let a = &self.vertices[c[k]];
            let b = &self.vertices[c[(k + 1) % c.len()]];
            area = &area + &a.cross(b);
        }
        area.scale(&rat(1, 2))
    }

    /// Every nonempty proper face, each with a direction in the relative
    /// interior of its normal cone (sum of the incident facet normals).
    pub fn faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self
            .facets
            .iter()
            .map(|f| {
                let mut vs = f.vertices.clone();
                vs.sort_unstable();
                Face {
                    dim: self.dim - 1,
                    vertices: vs,
                    normal: f.normal.clone(),
                }
            })
            .collect();
        if self.dim == 3 {
            for (i, f) in self.facets.iter().enumerate() {
                for g in &self.facets[i + 1..] {
                    let common: BTreeSet<usize> = f
                        .vertices
                        .iter()
                        .filter(|v| g.vertices.contains(v))
                        .copied()
                        .collect();
                    if common.len() >= 2 {
                        out.push(Face {
                            dim: 1,
                            vertices: common.into_iter().collect(),
                            normal: &f.normal + &g.normal,
                        });
                    }
                }
            }
        }
        for v in 0..self.vertices.len() {
            let normal = self
                .facets
                .iter()
                .filter(|f| f.vertices.contains(&v))
                .fold(Point::origin(self.dim), |acc, f| &acc + &f.normal);
            out.push(Face {
                dim: 0,
                vertices: vec![v],
                normal,
            });
        }
        out
    }

    /// Exact membership in the closed body.
    pub fn contains(&self, x: &Point) -> bool {
        self.facets.iter().all(|f| f.normal.dot(x) <= f.offset)
    }

    /// Exact membership in the interior.
    pub fn contains_interior(&self, x: &Point) -> bool {
        self.facets.iter().all(|f| f.normal.dot(x) < f.offset)
    }

    pub fn reflect(&self) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| -v).collect();
        convex_hull(&pts, self.dim).expect("reflection of a full-dimensional body")
    }

    pub fn translate(&self, t: &Point) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| v + t).collect();
        convex_hull(&pts, self.dim).expect("translate of a full-dimensional body")
    }

    pub fn scale(&self, s: &Rational) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| v.scale(s)).collect();
        convex_hull(&pts, self.dim).expect("scaling by a nonzero factor")
    }

    /// Image under `x -> A x + t` with `A` given by rows.
    pub fn affine_image(&self, matrix: &[Vec<Rational>], shift: &Point) -> Result<Polytope, GeomError> {
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| {
                let coords = matrix
                    .iter()
                    .zip(shift.coords())
                    .map(|(row, s)| Point::new(row.clone()).dot(v) + s)
                    .collect();
                Point::new(coords)
            })
            .collect();
        convex_hull(&pts, self.dim)
    }

    pub fn centroid_of_vertices(&self) -> Point {
        Point::centroid(&self.vertices)
    }

    /// Axis-aligned bounding box `(min, max)` in floating point.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for v in &self.vertices {
            for (k, c) in v.to_f64().into_iter().enumerate() {
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
        (lo, hi)
    }

    /// Facets as unit-normal half-spaces `n . x <= c` in floating point.
    pub fn halfspaces_f64(&self) -> Vec<(Vec<f64>, f64)> {
        self.facets
            .iter()
            .map(|f| {
                let n = f.normal.to_f64();
                let len = n.iter().map(|c| c * c).sum::<f64>().sqrt();
                (
                    n.iter().map(|c| c / len).collect(),
                    crate::scalar::to_f64(&f.offset) / len,
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn pts(raw: &[&[i64]]) -> Vec<Point> {
        raw.iter().map(|c| Point::from_ints(c)).collect()
    }

    #[test]
    fn square_without_center() {
        let p = Polytope::from_points(&pts(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 1]]), 2).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.volume(), int(4));
    }

    #[test]
    fn collinear_boundary_points_are_dropped() {
        let p = Polytope::from_points(&pts(&[&[0, 0], &[1, 0], &[2, 0], &[0, 2]]), 2).unwrap();
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn tetrahedron_and_cube() {
        let t = Polytope::from_points(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3).unwrap();
        assert_eq!(t.facets().len(), 4);
        assert_eq!(t.volume(), rat(1, 6));

        let mut cube = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    cube.push(Point::from_ints(&[x, y, z]));
                }
            }
        }
        let c = Polytope::from_points(&cube, 3).unwrap();
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.facets().len(), 6);
        assert!(c.facets().iter().all(|f| f.vertices().len() == 4));
        assert_eq!(c.volume(), int(8));
        assert_eq!(c.faces().len(), 6 + 12 + 8);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let flat = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert_eq!(Polytope::from_points(&flat, 3), Err(GeomError::DegenerateInput));
        let line = pts(&[&[0, 0], &[1, 1], &[2, 2]]);
        assert_eq!(Polytope::from_points(&line, 2), Err(GeomError::DegenerateInput));
        assert!(matches!(
            Polytope::from_points(&pts(&[&[0, 0]]), 3),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn support_sets_of_square_and_triangle() {
        let sq = Polytope::from_points(&pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]), 2).unwrap();
        assert_eq!(sq.support_set(&Point::from_ints(&[1, 0])).dim, 1);
        assert_eq!(sq.support_set(&Point::from_ints(&[1, 1])).dim, 0);
        let tri = Polytope::from_points(&pts(&[&[0, 0], &[1, 0], &[0, 1]]), 2).unwrap();
        let f = tri.support_set(&Point::from_ints(&[1, 1]));
        assert_eq!(f.dim, 1);
        let vs: Vec<&Point> = f.vertices.iter().map(|&i| tri.vertex(i)).collect();
        assert_eq!(vs, vec![&Point::from_ints(&[0, 1]), &Point::from_ints(&[1, 0])]);
    }

    #[test]
    fn hexagon_from_triangle_combination() {
        // (1 - t) v_i - t w_j at t = 1/2 for the unit right triangle
        let tri = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        let half = rat(1, 2);
        let mut comb = Vec::new();
        for v in &tri {
            for w in &tri {
                comb.push(&v.scale(&half) - &w.scale(&half));
            }
        }
        let h = Polytope::from_points(&comb, 2).unwrap();
        assert_eq!(h.vertices().len(), 6);
        assert_eq!(h.volume(), rat(3, 4));
    }
}
