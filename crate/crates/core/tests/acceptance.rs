//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use affdiam::counterexample::{build_bodies, probe_ratio};
use affdiam::diameters::{na_exact, na_montecarlo, planar_triangulation};
use affdiam::gauge::{length_measures, RadicalSum, lipschitz_bound, lipschitz_probe, mixed_area_identity, theorem2_bound_check};
use affdiam::geom::polygon::intersection_area;
use affdiam::geom::orient2d;
use affdiam::minkowski::{difference_body, rogers_shephard_check};
use affdiam::position::general_relative_position;
use affdiam::scalar::{int, pow, rat, to_f64};
use affdiam::{Point, Polytope, Rational, Tolerance};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(raw: &[&[i64]]) -> Polytope {
    let pts: Vec<Point> = raw.iter().map(|c| Point::from_ints(c)).collect();
    Polytope::from_points(&pts, raw[0].len()).unwrap()
}

struct Corpus {
    polygons: Vec<Polytope>,
    tetrahedra: Vec<Polytope>,
    solids: Vec<Polytope>,
}

/// Random integer bodies passing the position check, drawn from a fixed seed.
fn random_body(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Option<Polytope> {
    let pts: Vec<Point> = (0..count)
        .map(|_| Point::from_ints(&(0..dim).map(|_| rng.gen_range(-20..=20)).collect::<Vec<_>>()))
        .collect();
    let p = Polytope::from_points(&pts, dim).ok()?;
    general_relative_position(&p).holds.then_some(p)
}

fn corpus() -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut polygons = vec![
        poly(&[&[0, 0], &[1, 0], &[0, 1]]),
        poly(&[&[0, 0], &[3, 0], &[2, 2], &[0, 1]]),
        poly(&[&[0, 0], &[5, 1], &[4, 4], &[1, 3]]),
        poly(&[&[10, 0], &[11, 12], &[-1, 11], &[-10, 0], &[-10, -10], &[0, -10]]),
    ];
    while polygons.len() < 28 {
        let count = rng.gen_range(3..=9);
        polygons.extend(random_body(&mut rng, 2, count));
    }
    let mut tetrahedra = vec![poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])];
    while tetrahedra.len() < 12 {
        tetrahedra.extend(random_body(&mut rng, 3, 4));
    }
    let mut solids = Vec::new();
    while solids.len() < 6 {
        let count = rng.gen_range(5..=8);
        solids.extend(random_body(&mut rng, 3, count).filter(|p| !p.is_simplex()));
    }
    Corpus {
        polygons,
        tetrahedra,
        solids,
    }
}

fn gauge_pairs() -> Vec<(Polytope, Polytope)> {
    vec![
        (poly(&[&[0, 0], &[4, 1], &[1, 3]]), poly(&[&[-1, -1], &[2, -1], &[0, 3]])),
        (poly(&[&[0, 0], &[3, 0], &[2, 2], &[0, 1]]), poly(&[&[-2, -1], &[1, -2], &[2, 1], &[-1, 2]])),
        (poly(&[&[0, 0], &[7, 1], &[9, 5], &[3, 8], &[-1, 4]]), poly(&[&[-3, -1], &[2, -2], &[1, 4]])),
        (poly(&[&[1, 0], &[5, 2], &[2, 6]]), poly(&[&[-1, -2], &[3, -1], &[2, 2], &[-2, 1]])),
        (poly(&[&[0, 0], &[6, 1], &[5, 4], &[1, 5], &[-1, 2]]), poly(&[&[-2, -3], &[3, -1], &[1, 2], &[-2, 2]])),
    ]
}

fn is_centrally_symmetric(p: &Polytope) -> bool {
    let c = p.centroid_of_vertices();
    let twice = c.scale(&int(2));
    p.vertices().iter().all(|v| p.vertices().contains(&(&twice - v)))
}

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    let took = t.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn simplex_equality(c: &Corpus) -> Verdict {
    let mut simplices: Vec<&Polytope> = c.polygons.iter().filter(|p| p.is_simplex()).collect();
    simplices.extend(&c.tetrahedra);
    for p in &simplices {
        let t = Instant::now();
        let r = na_exact(p).map_err(|e| e.to_string())?;
        within(t, Duration::from_secs(1))?;
        let want = pow(&int(2), p.dim()) - int(1);
        ensure(r.value == want && r.via_slabs == r.via_polynomial, || format!("N_a = {} on {:?}", r.value, p.vertices()))?;
    }
    Ok(format!("{} simplices, both paths equal", simplices.len()))
}

fn bounds(c: &Corpus) -> Verdict {
    let t = Instant::now();
    ensure(c.polygons.len() >= 20 && c.tetrahedra.len() >= 10, || "corpus too small".into())?;
    let all = c.polygons.iter().chain(&c.tetrahedra).chain(&c.solids);
    let mut count = 0;
    for p in all {
        let n = p.dim();
        let na = na_exact(p).map_err(|e| e.to_string())?.value;
        let top = pow(&int(2), n) - int(1);
        ensure(na > int(n as i64) && na <= top, || format!("N_a = {na} out of range"))?;
        ensure((na == top) == p.is_simplex(), || format!("N_a = {na}, simplex = {}", p.is_simplex()))?;
        count += 1;
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!(
        "{count} bodies ({} polygons, {} tetrahedra, {} other solids)",
        c.polygons.len(),
        c.tetrahedra.len(),
        c.solids.len()
    ))
}

fn planar_identity(c: &Corpus) -> Verdict {
    for p in &c.polygons {
        let dp_area = difference_body(p).volume();
        let na = na_exact(p).map_err(|e| e.to_string())?.value;
        ensure(na == &dp_area / (int(2) * p.volume()), || format!("N_a = {na}"))?;
        let tris = planar_triangulation(p).map_err(|e| e.to_string())?;
        ensure(tris.len() == 2 * p.vertices().len(), || "wrong triangle count".into())?;
        let total: Rational = tris.iter().map(|t| orient2d(&t[0], &t[1], &t[2]) / int(2)).sum();
        ensure(total == dp_area, || format!("areas sum to {total}, V(DP) = {dp_area}"))?;
        for (i, a) in tris.iter().enumerate() {
            for b in &tris[i + 1..] {
                ensure(intersection_area(a, b).is_zero(), || "overlapping triangles".into())?;
            }
        }
    }
    Ok(format!("{} polygons", c.polygons.len()))
}

fn montecarlo() -> Verdict {
    let t = Instant::now();
    let tol = Tolerance::default();
    let bodies = [
        ("triangle", poly(&[&[0, 0], &[1, 0], &[0, 1]])),
        ("tetrahedron", poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
        ("quadrilateral", poly(&[&[0, 0], &[3, 0], &[2, 2], &[0, 1]])),
    ];
    let mut notes = Vec::new();
    for (name, p) in &bodies {
        let exact = to_f64(&na_exact(p).map_err(|e| e.to_string())?.value);
        let est = na_montecarlo(p, 100_000, 42, &tol).map_err(|e| e.to_string())?;
        ensure((est.mean - exact).abs() <= 3.0 * est.stderr, || {
            format!("{name}: mean {} vs {exact}, stderr {}", est.mean, est.stderr)
        })?;
        if *name == "triangle" {
            ensure(est.stderr < 0.02, || format!("triangle stderr {}", est.stderr))?;
        }
        notes.push(format!("{name} {:.4}±{:.4}", est.mean, est.stderr));
    }
    within(t, Duration::from_secs(60))?;
    Ok(notes.join(", "))
}

fn rogers_shephard(c: &Corpus) -> Verdict {
    let square = poly(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
    let hexagon = poly(&[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]]);
    for p in [&square, &hexagon] {
        let r = rogers_shephard_check(p).map_err(|e| e.to_string())?;
        ensure(r.lower_gap.is_zero(), || format!("lower gap {}", r.lower_gap))?;
    }
    let simplices = [
        poly(&[&[0, 0], &[1, 0], &[0, 1]]),
        poly(&[&[0, 0], &[5, 2], &[1, 7]]),
        poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
    ];
    for p in simplices.iter().chain(&c.tetrahedra) {
        let r = rogers_shephard_check(p).map_err(|e| e.to_string())?;
        ensure(r.upper_gap.is_zero(), || format!("upper gap {}", r.upper_gap))?;
    }
    let mut strict = 0;
    for p in c.polygons.iter().chain(&c.solids) {
        if p.is_simplex() || is_centrally_symmetric(p) {
            continue;
        }
        let r = rogers_shephard_check(p).map_err(|e| e.to_string())?;
        ensure(!r.lower_gap.is_zero() && !r.upper_gap.is_zero(), || "equality on a generic body".into())?;
        strict += 1;
    }
    Ok(format!("equalities on 2 symmetric bodies and {} simplices, strict on {strict}", simplices.len() + c.tetrahedra.len()))
}

fn mixed_area(c: &Corpus) -> Verdict {
    for p in &c.polygons {
        let id = mixed_area_identity(p).map_err(|e| e.to_string())?;
        ensure(id.holds, || format!("{} + {} != {}", id.with_k, id.with_reflection, id.area_dk))?;
    }
    Ok(format!("{} polygons", c.polygons.len()))
}

fn theorem2(c: &Corpus) -> Verdict {
    for p in &c.polygons {
        theorem2_bound_check(p).map_err(|e| e.to_string())?;
    }
    let hex = poly(&[&[10, 0], &[11, 12], &[-1, 11], &[-10, 0], &[-10, -10], &[0, -10]]);
    let v = na_exact(&hex).map_err(|e| e.to_string())?.value;
    ensure(v > int(2) && v <= int(3), || format!("perturbed hexagon {v}"))?;
    Ok(format!("{} polygons, perturbed hexagon N_a = {v} ≈ {:.4}", c.polygons.len(), to_f64(&v)))
}

fn lipschitz() -> Verdict {
    let mut worst: f64 = 0.0;
    for (k, b) in gauge_pairs() {
        let bound = lipschitz_bound(&b).map_err(|e| e.to_string())?.value;
        let probe = lipschitz_probe(&k, &b, 10_000, 42).map_err(|e| e.to_string())?;
        ensure(probe.max_ratio <= bound * (1.0 + 1e-9), || format!("ratio {} > bound {bound}", probe.max_ratio))?;
        worst = worst.max(probe.max_ratio / bound);
    }
    Ok(format!("5 pairs x 10^4 samples, max ratio/bound = {worst:.4}"))
}

fn measures() -> Verdict {
    let arcs: Vec<Point> = [[1, 0], [2, 1], [1, 2], [0, 1], [-1, 1], [-1, 0], [-1, -2], [0, -1], [3, -1]]
        .iter()
        .map(|c| Point::from_ints(c))
        .collect();
    for (k, b) in gauge_pairs() {
        let r = length_measures(&k, &b, &arcs).map_err(|e| e.to_string())?;
        ensure(r.k == r.k_direct && r.b == r.b_direct, || "arc masses differ from the direct edge sums".into())?;
        ensure(r.k.masses.iter().cloned().sum::<RadicalSum>() == r.k.total, || "masses do not add up".into())?;
        let whole = length_measures(&k, &b, &arcs[..1]).map_err(|e| e.to_string())?;
        ensure(whole.k.total == r.k.total, || "partition changes the total".into())?;
    }
    Ok(format!("5 pairs, {} arcs", arcs.len()))
}

fn counterexample() -> Verdict {
    let t = Instant::now();
    let inst = build_bodies(10).map_err(|e| e.to_string())?;
    let mut previous: Option<Rational> = None;
    let mut notes = Vec::new();
    let mut last = 0.0;
    for n in [3, 5, 7, 9] {
        let r = probe_ratio(&inst, n).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("n = {n} does not beat its bound"))?;
        ensure(r.ratio_squared > rat((n as i64 + 1).pow(2), 52), || format!("n = {n}"))?;
        if let Some(p) = &previous {
            ensure(r.ratio_squared > *p, || format!("ratio decreases at n = {n}"))?;
        }
        previous = Some(r.ratio_squared.clone());
        last = r.ratio;
        notes.push(format!("n={n}: {:.3} > {:.3}", r.ratio, r.bound));
    }
    ensure(last > 1.0, || format!("n = 9 ratio {last}"))?;
    within(t, Duration::from_secs(120))?;
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let c = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("simplex equality", Box::new(|| simplex_equality(&c))),
        ("mean diameter bounds", Box::new(|| bounds(&c))),
        ("planar identity and triangulation", Box::new(|| planar_identity(&c))),
        ("Monte Carlo agreement", Box::new(montecarlo)),
        ("Rogers-Shephard equality cases", Box::new(|| rogers_shephard(&c))),
        ("mixed area identity", Box::new(|| mixed_area(&c))),
        ("planar bounds 1 <= N_a <= 3", Box::new(|| theorem2(&c))),
        ("gauge projection Lipschitz bound", Box::new(lipschitz)),
        ("length measures from the normal bundle", Box::new(measures)),
        ("spatial non-Lipschitz example", Box::new(counterexample)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = check();
        let took = t.elapsed();
        match verdict {
            Ok(note) => println!("criterion {:>2} PASS  {name} ({took:.2?}): {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
