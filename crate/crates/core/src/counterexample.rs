//! A pair of convex bodies in space whose gauge projection is not Lipschitz.
//!
//! With `x_n = (1/n, 1/n^2, 0)` and `y_n = (1/n, 1/n^2, 1/n)`, `K` is the hull of
//! the zig-zag segments `S_n` (`[x_{n+1}, y_n]` for odd `n`, `[x_n, y_{n+1}]`
//! for even `n`) together with `(0, 1, 1)` and `(0, 1, -1)`, and `B` is the
//! hull of the complementary segments `T_n`. The infinite hulls are truncated
//! at depth `N`, i.e. `n <= N`.
//!
//! For odd `n` the plane `H_n` through `x_n, x_{n+1}, y_n, y_{n+1}` supports
//! `K` in `S_n` and `B` in `T_n`; this is re-verified on every truncated
//! instance before probing. In the plane coordinates
//! `x_{n+1} + s (x_n - x_{n+1}) + t e_3` the segments are
//! `S_n = [(0, 0), (1, 1/n)]` and `T_n = [(1, 0), (0, 1/(n+1))]`. Translating
//! `z_0 = x_n + y_{n+1}` by `lambda (x_n - x_{n+1})` slides `-T_n + z` along
//! `S_n`, and the two meet at `s = n (1 + lambda) / (2n + 1)` as long as
//! `lambda <= n/(n+1)`. At the end of that range the contact is
//! `y_{n+1} + lambda (x_n - x_{n+1})`, which is the probe point used here.
//!
//! `B` is translated by the centroid `c` of its vertices so that `o` lies in its
//! interior. Since `(z - c) - (B - c) = z - B`, the projection of `z` for `B`
//! equals the projection of `z - c` for `B - c`.

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::gauge::{gauge_distance, GaugeError};
use crate::geom::{GeomError, Point, Polytope};
use crate::io::{point_to_value, polytope_to_value, rational_to_value};
use crate::position::{strongly_general_relative_position, PositionReport};
use crate::scalar::{format_rational, int, rat, to_f64, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CounterexampleError {
    #[error("depth must be at least 3, got {0}")]
    DepthTooSmall(usize),
    #[error("probe index {n} must be odd with n + 1 <= depth {depth}")]
    BadIndex { n: usize, depth: usize },
    #[error("generator {0} is not a vertex of its hull")]
    GeneratorNotVertex(String),
    #[error("truncated bodies are not in strongly general relative position ({} witnesses)", .0.witnesses.len())]
    PositionCheckFailed(PositionReport),
    #[error("plane H_{0} does not separate the truncated bodies as required")]
    SeparationFailed(usize),
    #[error("projection of z_1 is {found}, expected x_{}", .n + 1)]
    ProjectionMismatch { n: usize, found: String },
    #[error("no admissible shift puts the projection of z_2 on S_{0}")]
    InfeasibleLambda(usize),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

#[derive(Debug, Clone)]
pub struct CounterexampleInstance {
    pub depth: usize,
    pub k: Polytope,
    /// The gauge body, already translated by `-shift`.
    pub b: Polytope,
    pub shift: Point,
    /// `x[i] = x_{i+1}` for `i <= depth`.
    pub x: Vec<Point>,
    pub y: Vec<Point>,
    pub position: PositionReport,
}

pub fn x_point(n: usize) -> Point {
    let n = n as i64;
    Point::new(vec![rat(1, n), rat(1, n * n), int(0)])
}

pub fn y_point(n: usize) -> Point {
    let n = n as i64;
    Point::new(vec![rat(1, n), rat(1, n * n), rat(1, n)])
}

/// `(S_n, T_n)`.
pub fn segments(n: usize) -> ([Point; 2], [Point; 2]) {
    if n % 2 == 1 {
        ([x_point(n + 1), y_point(n)], [x_point(n), y_point(n + 1)])
    } else {
        ([x_point(n), y_point(n + 1)], [x_point(n + 1), y_point(n)])
    }
}

fn anchors() -> [Point; 2] {
    [Point::from_ints(&[0, 1, 1]), Point::from_ints(&[0, 1, -1])]
}

pub fn build_bodies(depth: usize) -> Result<CounterexampleInstance, CounterexampleError> {
    if depth < 3 {
        return Err(CounterexampleError::DepthTooSmall(depth));
    }
    let mut k_pts: Vec<Point> = anchors().to_vec();
    let mut b_pts = Vec::new();
    for n in 1..=depth {
        let (s, t) = segments(n);
        k_pts.extend(s);
        b_pts.extend(t);
    }
    let k = Polytope::from_points(&k_pts, 3)?;
    let b_raw = Polytope::from_points(&b_pts, 3)?;
    for (body, pts) in [(&k, &k_pts), (&b_raw, &b_pts)] {
        if let Some(p) = pts.iter().find(|p| !body.vertices().contains(p)) {
            return Err(CounterexampleError::GeneratorNotVertex(p.to_string()));
        }
    }
    let shift = b_raw.centroid_of_vertices();
    let b = b_raw.translate(&-&shift);
    let position = strongly_general_relative_position(&k, &b)
        .map_err(|e| CounterexampleError::Gauge(GaugeError::Minkowski(e)))?;
    if !position.holds {
        return Err(CounterexampleError::PositionCheckFailed(position));
    }
    Ok(CounterexampleInstance {
        depth,
        k,
        b,
        shift,
        x: (1..=depth + 1).map(x_point).collect(),
        y: (1..=depth + 1).map(y_point).collect(),
        position,
    })
}

impl CounterexampleInstance {
    pub fn to_value(&self) -> Value {
        json!({
            "depth": self.depth,
            "K": polytope_to_value(&self.k),
            "B": polytope_to_value(&self.b),
            "shift": point_to_value(&self.shift),
            "x": self.x.iter().map(point_to_value).collect::<Vec<_>>(),
            "y": self.y.iter().map(point_to_value).collect::<Vec<_>>(),
            "strongly_general_position": self.position.holds,
        })
    }

    /// Checks that `H_n` meets `K` exactly in `S_n` and `B` exactly in `T_n`,
    /// with every other vertex on the side of `o` (of the untranslated `B`).
    fn check_separation(&self, n: usize) -> bool {
        let (xn, xn1, yn) = (x_point(n), x_point(n + 1), y_point(n));
        let mut normal = (&xn1 - &xn).cross(&(&yn - &xn));
        let mut offset = normal.dot(&xn);
        if offset.is_zero() {
            return false;
        }
        if offset < Rational::zero() {
            normal = -&normal;
            offset = -offset;
        }
        let (s, t) = segments(n);
        let side = |pts: Vec<Point>, on: &[Point; 2]| {
            pts.iter().all(|p| {
                let h = normal.dot(p);
                if on.contains(p) {
                    h == offset
                } else {
                    h < offset
                }
            })
        };
        let b_vertices = self.b.vertices().iter().map(|v| v + &self.shift).collect();
        side(self.k.vertices().to_vec(), &s) && side(b_vertices, &t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub lambda: Rational,
    pub ratio: f64,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub ratio_squared: Rational,
    /// `(n+1) / (2 sqrt 13)`.
    pub bound: f64,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub bound_squared: Rational,
    /// `|p(z_1) - p(z_2)|^2 > 1/(n+1)^2`.
    pub projection_gap_ok: bool,
    /// `|z_1 - z_2|^2 < 52/(n+1)^4`.
    pub shift_gap_ok: bool,
    pub pass: bool,
}

pub fn probe_ratio(inst: &CounterexampleInstance, n: usize) -> Result<ProbeReport, CounterexampleError> {
    if n % 2 == 0 || n + 1 > inst.depth {
        return Err(CounterexampleError::BadIndex { n, depth: inst.depth });
    }
    if !inst.check_separation(n) {
        return Err(CounterexampleError::SeparationFailed(n));
    }
    let (xn, xn1, yn1) = (x_point(n), x_point(n + 1), y_point(n + 1));
    let step = &xn - &xn1;
    let lambda = rat(n as i64, n as i64 + 1);
    let z1 = &xn1 + &yn1;
    let z2 = &(&xn + &yn1) + &step.scale(&lambda);

    let project = |z: &Point| gauge_distance(&inst.k, &inst.b, &(z - &inst.shift));
    let g1 = project(&z1)?;
    let p1 = g1.projection();
    if p1 != xn1 || !g1.d.is_one() {
        return Err(CounterexampleError::ProjectionMismatch { n, found: p1.to_string() });
    }
    let g2 = project(&z2)?;
    let p2 = g2.projection();
    let expected = &yn1 + &step.scale(&lambda);
    let (s, _) = segments(n);
    let on_segment = {
        let d = &s[1] - &s[0];
        let r = &p2 - &s[0];
        let t = r.dot(&d) / d.norm_sq();
        d.scale(&t) == r && t >= Rational::zero() && t <= Rational::one()
    };
    if !g2.d.is_one() || !on_segment || p2 != expected {
        return Err(CounterexampleError::InfeasibleLambda(n));
    }

    let dp = (&p1 - &p2).norm_sq();
    let dz = (&z1 - &z2).norm_sq();
    let ratio_squared = &dp / &dz;
    let m = int(n as i64 + 1);
    let bound_squared = &m * &m / int(52);
    let projection_gap_ok = &dp * &m * &m > Rational::one();
    let shift_gap_ok = &dz * crate::scalar::pow(&m, 4) < int(52);
    Ok(ProbeReport {
        n,
        ratio: to_f64(&ratio_squared).sqrt(),
        bound: (n as f64 + 1.0) / (2.0 * 13f64.sqrt()),
        pass: ratio_squared > bound_squared && projection_gap_ok && shift_gap_ok,
        lambda,
        ratio_squared,
        bound_squared,
        projection_gap_ok,
        shift_gap_ok,
    })
}

/// Probes every admissible odd `n` of the instance.
pub fn probe_all(inst: &CounterexampleInstance) -> Result<Vec<ProbeReport>, CounterexampleError> {
    (1..inst.depth).filter(|n| n % 2 == 1).map(|n| probe_ratio(inst, n)).collect()
}

pub fn probe_to_value(r: &ProbeReport) -> Value {
    json!({
        "n": r.n,
        "lambda": format_rational(&r.lambda),
        "ratio": r.ratio,
        "ratio_squared": rational_to_value(&r.ratio_squared),
        "bound": r.bound,
        "bound_squared": rational_to_value(&r.bound_squared),
        "projection_gap_ok": r.projection_gap_ok,
        "shift_gap_ok": r.shift_gap_ok,
        "pass": r.pass,
    })
}
