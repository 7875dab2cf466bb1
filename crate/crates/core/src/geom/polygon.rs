//! Planar helpers: signed areas, exact convex clipping, angular order.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::point::{cross2, orient2d, Point};
use crate::scalar::{rat, Rational};

/// Signed shoelace area of a closed polygon.
pub fn signed_area(poly: &[Point]) -> Rational {
    let n = poly.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        acc += cross2(&poly[i], &poly[(i + 1) % n]);
    }
    acc * rat(1, 2)
}

/// Intersection of two convex polygons, both counter-clockwise.
pub fn clip_convex(subject: &[Point], clip: &[Point]) -> Vec<Point> {
    let mut out = subject.to_vec();
    let m = clip.len();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let a = &clip[i];
        let b = &clip[(i + 1) % m];
        let input = std::mem::take(&mut out);
        let k = input.len();
        for j in 0..k {
            let p = &input[j];
            let q = &input[(j + 1) % k];
            let sp = orient2d(a, b, p);
            let sq = orient2d(a, b, q);
            if !sp.is_negative() {
                out.push(p.clone());
            }
            if (sp.is_positive() && sq.is_negative()) || (sp.is_negative() && sq.is_positive()) {
                let t = &sp / (&sp - &sq);
                out.push(p.lerp(q, &t));
            }
        }
    }
    out
}

/// Area of the intersection of two convex ccw polygons.
pub fn intersection_area(a: &[Point], b: &[Point]) -> Rational {
    let clipped = clip_convex(a, b);
    if clipped.len() < 3 {
        return Rational::zero();
    }
    signed_area(&clipped)
}

/// Orders two nonzero planar directions by their counter-clockwise angle
/// measured from `base`, with `base` itself at angle 0.
pub fn ccw_angle_cmp(base: &Point, u: &Point, v: &Point) -> Ordering {
    let half = |w: &Point| {
        let c = cross2(base, w);
        if c.is_positive() || (c.is_zero() && base.dot(w).is_positive()) {
            0
        } else {
            1
        }
    };
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    let c = cross2(u, v);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}
