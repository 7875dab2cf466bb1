//! Exact geometric kernel: points, convex hulls, faces, volumes and a small
//! simplex solver.

mod hull;
pub mod linalg;
pub mod lp;
mod point;
pub mod polygon;
mod polytope;

use thiserror::Error;

pub use hull::convex_hull;
pub use point::{affine_dim, cross2, orient2d, orient3d, rank, Point};
pub use polytope::{Face, Facet, Polytope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("input points do not span the ambient space")]
    DegenerateInput,
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is not supported (only 2 and 3)")]
    UnsupportedDimension(usize),
}
