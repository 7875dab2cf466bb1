//! Lipschitz constant of the planar gauge projection.
//!
//! If every boundary vector `b` of `B` makes an angle of at least `a0` with
//! the supporting lines of `B` at `b`, then `p(K, B, .)` is
//! `1/sin(a0)`-Lipschitz. For a polygon the extreme angle sits at a vertex
//! `v` against one of its two edge lines, where
//! `sin a = dist(o, line) / |v| = |e x v| / (|e| |v|)`. The bound is
//! returned through its exact square `|e|^2 |v|^2 / (e x v)^2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{gauge_distance_f64, GaugeError};
use crate::geom::{cross2, Point, Polytope};
use crate::scalar::{to_f64, Rational, Tolerance};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzBound {
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub squared: Rational,
    pub value: f64,
    /// `a0` in degrees.
    pub min_angle_deg: f64,
}

pub fn lipschitz_bound(b: &Polytope) -> Result<LipschitzBound, GaugeError> {
    assert_eq!(b.dim(), 2, "the Lipschitz bound is planar");
    if !b.contains_interior(&Point::origin(2)) {
        return Err(GaugeError::OriginNotInterior);
    }
    let mut worst: Option<Rational> = None;
    for (i, j, _) in b.edges_ccw() {
        let e = b.vertex(j) - b.vertex(i);
        for v in [b.vertex(i), b.vertex(j)] {
            let c = cross2(&e, v);
            let sq = e.norm_sq() * v.norm_sq() / (&c * &c);
            if worst.as_ref().map_or(true, |w| sq > *w) {
                worst = Some(sq);
            }
        }
    }
    let squared = worst.expect("polygon has edges");
    let value = to_f64(&squared).sqrt();
    Ok(LipschitzBound {
        min_angle_deg: (1.0 / value).asin().to_degrees(),
        value,
        squared,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzProbe {
    pub max_ratio: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub pairs: usize,
}

const CHUNK: usize = 256;

/// Largest observed `|p(x) - p(y)| / |x - y|` over seeded pairs outside `K`,
/// drawn from the bounding box of `K` enlarged by its diameter on every side.
/// Every second pair is local: `y` is `x` moved by at most a thousandth of the
/// box size, which catches the steepest pieces.
pub fn lipschitz_probe(k: &Polytope, b: &Polytope, samples: usize, seed: u64) -> Result<LipschitzProbe, GaugeError> {
    let tol = Tolerance::default();
    let (mut lo, mut hi) = k.bounding_box();
    let span = lo.iter().zip(&hi).map(|(a, b)| b - a).fold(0.0, f64::max);
    for (l, h) in lo.iter_mut().zip(hi.iter_mut()) {
        *l -= span;
        *h += span;
    }
    let halfspaces = k.halfspaces_f64();
    let outside = |z: &[f64]| {
        halfspaces
            .iter()
            .any(|(n, c)| n.iter().zip(z).map(|(a, b)| a * b).sum::<f64>() > c + tol.eps)
    };
    let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        loop {
            let z: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| rng.gen_range(*l..*h)).collect();
            if outside(&z) {
                return z;
            }
        }
    };
    let chunks = samples.div_ceil(CHUNK);
    let results = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<(f64, Vec<f64>, Vec<f64>), GaugeError> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let mut best = (0.0, Vec::new(), Vec::new());
            for i in 0..CHUNK.min(samples - c * CHUNK) {
                let x = draw(&mut rng);
                let y = if i % 2 == 0 {
                    draw(&mut rng)
                } else {
                    let y: Vec<f64> = x.iter().map(|xi| xi + span * 1e-3 * rng.gen_range(-1.0..1.0)).collect();
                    if !outside(&y) {
                        continue;
                    }
                    y
                };
                let dist = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                if dist <= tol.eps {
                    continue;
                }
                let px = gauge_distance_f64(k, b, &x, &tol)?.p;
                let py = gauge_distance_f64(k, b, &y, &tol)?.p;
                let moved = px.iter().zip(&py).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                let ratio = moved / dist;
                if ratio > best.0 {
                    best = (ratio, x, y);
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (max_ratio, x, y) = results
        .into_iter()
        .fold((0.0, Vec::new(), Vec::new()), |a, b| if b.0 > a.0 { b } else { a });
    Ok(LipschitzProbe {
        max_ratio,
        x,
        y,
        pairs: samples,
    })
}
