//! Exact computation of the mean number of affine diameters of convex
//! polytopes, difference bodies and volume polynomials, planar gauge
//! projections with their normal bundles, and a spatial example where the
//! gauge projection is not Lipschitz.

pub mod corpus;
pub mod counterexample;
pub mod diameters;
pub mod gauge;
pub mod geom;
pub mod io;
pub mod minkowski;
pub mod position;
pub mod scalar;
pub mod svg;

pub use geom::{Face, Facet, GeomError, Point, Polytope};
pub use scalar::{Mode, Rational, Tolerance};
