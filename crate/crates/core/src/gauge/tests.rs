use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::geom::polygon::clip_convex;
use crate::minkowski::minkowski_sum;
use crate::scalar::{from_f64, int, rat, to_f64};

fn poly(raw: &[&[i64]]) -> Polytope {
    let pts: Vec<Point> = raw.iter().map(|c| Point::from_ints(c)).collect();
    Polytope::from_points(&pts, raw[0].len()).unwrap()
}

fn ccw(p: &Polytope) -> Vec<Point> {
    p.cycle().into_iter().map(|i| p.vertex(i).clone()).collect()
}

/// Smallest `r` with `(x - rB) ∩ K` of positive area, by bisection on exact
/// polygon clipping.
fn bisection_distance(k: &Polytope, b: &Polytope, x: &Point) -> f64 {
    let kc = ccw(k);
    let meets = |r: f64| {
        let r = from_f64(r).unwrap();
        // a point reflection keeps the vertex order counter-clockwise
        let shifted: Vec<Point> = ccw(b).iter().map(|v| x - &v.scale(&r)).collect();
        let clipped = clip_convex(&shifted, &kc);
        clipped.len() >= 3 && crate::geom::polygon::signed_area(&clipped) > Rational::zero()
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while !meets(hi) {
        hi *= 2.0;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if meets(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn pinned_pairs() -> Vec<(Polytope, Polytope)> {
    vec![
        (poly(&[&[0, 0], &[4, 1], &[1, 3]]), poly(&[&[-1, -1], &[2, -1], &[0, 3]])),
        (poly(&[&[0, 0], &[3, 0], &[2, 2], &[0, 1]]), poly(&[&[-2, -1], &[1, -2], &[2, 1], &[-1, 2]])),
        (poly(&[&[0, 0], &[7, 1], &[9, 5], &[3, 8], &[-1, 4]]), poly(&[&[-3, -1], &[2, -2], &[1, 4]])),
        (poly(&[&[1, 0], &[5, 2], &[2, 6]]), poly(&[&[-1, -2], &[3, -1], &[2, 2], &[-2, 1]])),
        (poly(&[&[0, 0], &[6, 1], &[5, 4], &[1, 5], &[-1, 2]]), poly(&[&[-2, -3], &[3, -1], &[1, 2], &[-2, 2]])),
    ]
}

#[test]
fn pinned_pairs_are_in_strong_position() {
    for (i, (k, b)) in pinned_pairs().iter().enumerate() {
        let r = crate::position::strongly_general_relative_position(k, b).unwrap();
        assert!(r.holds, "pair {i}: {:?}", r.witnesses);
    }
}

#[test]
fn points_of_k_have_distance_zero() {
    let (k, b) = &pinned_pairs()[0];
    let x = Point::from_ints(&[1, 1]);
    let g = gauge_distance(k, b, &x).unwrap();
    assert!(g.d.is_zero());
    assert_eq!(g.projection(), x);
    assert_eq!(g.normal(), None);
}

#[test]
fn forward_construction_is_inverted() {
    for (k, b) in pinned_pairs() {
        for piece in normal_bundle(&k, &b).unwrap() {
            let t = rat(1, 3);
            let p0 = piece.start.0.lerp(&piece.end.0, &t);
            let b0 = piece.start.1.lerp(&piece.end.1, &t);
            for r in [rat(1, 2), int(1), int(3)] {
                let x = &p0 + &b0.scale(&r);
                let g = gauge_distance(&k, &b, &x).unwrap();
                assert_eq!((g.d.clone(), g.projection(), g.normal()), (r, p0.clone(), Some(b0.clone())));
            }
        }
    }
}

#[test]
fn matches_bisection_oracle() {
    let mut checked = 0;
    for (k, b) in pinned_pairs() {
        for (i, j) in [(-3i64, 2i64), (5, -4), (11, 9), (2, 12)] {
            let x = Point::new(vec![rat(7 * i + 1, 7), rat(5 * j - 2, 5)]);
            let g = gauge_distance(&k, &b, &x).unwrap();
            let f = gauge_distance_f64(&k, &b, &x.to_f64(), &Tolerance::default()).unwrap();
            let oracle = bisection_distance(&k, &b, &x);
            assert!((to_f64(&g.d) - oracle).abs() < 1e-9, "{} vs {oracle}", g.d);
            assert!((f.d - oracle).abs() < 1e-9);
            checked += 1;
        }
    }
    assert_eq!(checked, 20);
}

#[test]
fn degenerate_projection_is_reported() {
    let sq = poly(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
    let b = poly(&[&[-1, -1], &[1, -1], &[1, 1], &[-1, 1]]);
    // the whole top edge of the square is at gauge distance 1 from (1/2, 2)
    let x = Point::new(vec![rat(1, 2), int(2)]);
    assert_eq!(gauge_distance(&sq, &b, &x), Err(GaugeError::GaugeDegenerate));
    let off = poly(&[&[1, 1], &[2, 1], &[1, 2]]);
    assert_eq!(gauge_distance(&sq, &off, &x), Err(GaugeError::OriginNotInterior));
}

#[test]
fn lipschitz_bounds_of_regular_bodies() {
    let sq = poly(&[&[-1, -1], &[1, -1], &[1, 1], &[-1, 1]]);
    let l = lipschitz_bound(&sq).unwrap();
    assert_eq!(l.squared, int(2));
    assert!((l.min_angle_deg - 45.0).abs() < 1e-9);

    // rational vertices within 1e-7 of the regular hexagon
    let h = rat(866_025_4, 10_000_000);
    let half = rat(1, 2);
    let hex = Polytope::from_points(
        &[
            Point::new(vec![int(1), int(0)]),
            Point::new(vec![half.clone(), h.clone()]),
            Point::new(vec![-half.clone(), h.clone()]),
            Point::new(vec![int(-1), int(0)]),
            Point::new(vec![-half.clone(), -h.clone()]),
            Point::new(vec![half, -h]),
        ],
        2,
    )
    .unwrap();
    let l = lipschitz_bound(&hex).unwrap();
    assert!((l.value - 2.0 / 3f64.sqrt()).abs() < 1e-6, "{}", l.value);
}

#[test]
fn lipschitz_bound_grows_as_a_vertex_drifts() {
    let bounds: Vec<f64> = [2, 4, 8, 16, 32]
        .iter()
        .map(|&t| lipschitz_bound(&poly(&[&[-1, -1], &[1, -1], &[0, t]])).unwrap().value)
        .collect();
    assert!(bounds.windows(2).all(|w| w[1] > w[0]), "{bounds:?}");
}

#[test]
fn probe_stays_below_bound() {
    for (k, b) in pinned_pairs() {
        let bound = lipschitz_bound(&b).unwrap().value;
        let probe = lipschitz_probe(&k, &b, 600, 7).unwrap();
        assert!(probe.max_ratio <= bound * (1.0 + 1e-9), "{} > {bound}", probe.max_ratio);
        assert_eq!(probe, lipschitz_probe(&k, &b, 600, 7).unwrap());
    }
}

#[test]
fn euclidean_like_gauge_is_nearly_nonexpansive() {
    // K and B approximate disks by 16-gons with rational vertices
    let circle: Vec<Point> = (0..16)
        .map(|i| {
            let a = i as f64 * std::f64::consts::PI / 8.0 + 0.1;
            Point::new(vec![
                rat((a.cos() * 1000.0).round() as i64, 1000),
                rat((a.sin() * 1000.0).round() as i64, 1000),
            ])
        })
        .collect();
    let b = Polytope::from_points(&circle, 2).unwrap();
    let k = poly(&[&[0, 0], &[4, 1], &[1, 3]]);
    let probe = lipschitz_probe(&k, &b, 600, 3).unwrap();
    assert!(probe.max_ratio <= 1.1, "{}", probe.max_ratio);
}

#[test]
fn triangle_bundle_alternates() {
    let k = poly(&[&[0, 0], &[3, 1], &[1, 2]]);
    let pieces = normal_bundle(&k, &k.reflect()).unwrap();
    assert_eq!(pieces.len(), 6);
    for (i, p) in pieces.iter().enumerate() {
        let next = &pieces[(i + 1) % 6];
        assert_ne!(p.kind, next.kind);
        assert_eq!(p.end, next.start);
        let expected = match p.kind {
            PieceKind::EdgeOfKVertexOfB => Curvature::Zero,
            PieceKind::VertexOfKEdgeOfB => Curvature::Infinite,
        };
        assert_eq!(p.curvature, expected);
    }
    let sq = poly(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
    assert!(matches!(
        normal_bundle(&sq, &sq.reflect()),
        Err(GaugeError::NotStronglyGeneralPosition(_))
    ));
}

fn perimeter(p: &Polytope) -> RadicalSum {
    p.edges_ccw()
        .into_iter()
        .map(|(i, j, _)| RadicalSum::sqrt(&(p.vertex(j) - p.vertex(i)).norm_sq()))
        .sum()
}

#[test]
fn measures_match_edge_lengths() {
    for (k, b) in pinned_pairs() {
        let whole = length_measures(&k, &b, &[Point::from_ints(&[1, 0])]).unwrap();
        assert_eq!(whole.k.total, perimeter(&k));
        assert_eq!(whole.b.total, perimeter(&b));
        let quarters = [[1, 0], [0, 1], [-1, 0], [0, -1]].map(|c| Point::from_ints(&c));
        let r = length_measures(&k, &b, &quarters).unwrap();
        assert_eq!(r.k.total, whole.k.total);
    }
    // a narrow arc holding only the normal (2, 3) of the edge from (4, 1) to (1, 3)
    let k = poly(&[&[0, 0], &[4, 1], &[1, 3]]);
    let b = pinned_pairs()[0].1.clone();
    let arcs = [Point::from_ints(&[2, 3]), Point::from_ints(&[1, 2])];
    let r = length_measures(&k, &b, &arcs).unwrap();
    assert_eq!(r.k.masses[0], RadicalSum::sqrt(&int(13)));
    assert!(length_measures(&k, &b, &[Point::from_ints(&[0, 1]), Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])]).is_err());
}

#[test]
fn mixed_area_identity_on_polygons() {
    for (k, _) in pinned_pairs() {
        let id = mixed_area_identity(&k).unwrap();
        assert!(id.holds, "{id:?}");
        assert_eq!(id.with_k, id.with_reflection);
    }
}

#[test]
fn theorem2_reports() {
    let tri = poly(&[&[0, 0], &[3, 1], &[1, 2]]);
    assert_eq!(theorem2_bound_check(&tri).unwrap().na, int(3));
    let q = theorem2_bound_check(&poly(&[&[0, 0], &[3, 0], &[2, 2], &[0, 1]])).unwrap();
    assert!(q.na > int(1) && q.na < int(3));
    assert!(!q.is_triangle);
}

fn pair_strategy() -> impl Strategy<Value = (usize, Vec<(i64, i64)>)> {
    (0usize..5, prop::collection::vec((-15i64..15, -15i64..15), 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distance_is_convex((idx, raw) in pair_strategy()) {
        let (k, b) = &pinned_pairs()[idx];
        let x = Point::new(vec![rat(raw[0].0, 3), rat(raw[0].1, 3)]);
        let y = Point::new(vec![rat(raw[1].0, 3), rat(raw[1].1, 3)]);
        let d = |z: &Point| gauge_solve(&rows(k), &rows(b), z.coords(), &Tolerance::default()).unwrap().d;
        for l in [rat(1, 4), rat(1, 2), rat(3, 4)] {
            let z = y.lerp(&x, &l);
            prop_assert!(d(&z) <= &l * d(&x) + (int(1) - &l) * d(&y));
        }
    }

    #[test]
    fn projection_is_constant_on_rays((idx, raw) in pair_strategy()) {
        let (k, b) = &pinned_pairs()[idx];
        let x = Point::new(vec![rat(raw[2].0, 2), rat(raw[2].1, 2)]);
        let Ok(g) = gauge_distance(k, b, &x) else { return Ok(()) };
        if g.d.is_zero() { return Ok(()) }
        let p = g.projection();
        for s in [rat(1, 3), int(2), int(5)] {
            let z = &p + &(&x - &p).scale(&s);
            let h = gauge_distance(k, b, &z).unwrap();
            prop_assert_eq!(h.projection(), p.clone());
            prop_assert_eq!(h.d, &g.d * &s);
        }
    }

    #[test]
    fn level_sets_are_boundaries((idx, raw) in pair_strategy()) {
        let (k, b) = &pinned_pairs()[idx];
        let dir = Point::new(vec![int(raw[0].0), int(raw[0].1)]);
        if dir.is_zero() { return Ok(()) }
        for t in [rat(1, 2), int(1), int(2)] {
            let sum = minkowski_sum(k, &b.scale(&t)).unwrap();
            // boundary point of K + tB in direction dir
            let face = sum.support_set(&dir);
            let x = sum.vertex(face.vertices[0]).clone();
            let g = gauge_distance_f64(k, b, &x.to_f64(), &Tolerance::default()).unwrap();
            prop_assert!((g.d - to_f64(&t)).abs() < 1e-9);
            let exact = gauge_solve(&rows(k), &rows(b), x.coords(), &Tolerance::default()).unwrap();
            prop_assert_eq!(exact.d, t.clone());
            prop_assert!(sum.contains(&x) && !sum.contains_interior(&x));
        }
    }
}

fn rows(p: &Polytope) -> Vec<Vec<Rational>> {
    p.vertices().iter().map(|v| v.coords().to_vec()).collect()
}
