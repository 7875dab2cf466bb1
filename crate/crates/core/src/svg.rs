//! SVG picture of a polygon: the difference body, its slab triangulation, the
//! body itself and the affine diameters through an optional point.

use std::fmt::Write;

use crate::diameters::{diameters_through, planar_triangulation, DiameterError};
use crate::geom::{Point, Polytope};
use crate::minkowski::difference_body;

const CANVAS: f64 = 800.0;

fn polygon(out: &mut String, pts: &[Vec<f64>], style: &str) {
    let coords: Vec<String> = pts.iter().map(|p| format!("{:.6},{:.6}", p[0], p[1])).collect();
    let _ = writeln!(out, r#"  <polygon points="{}" {style}/>"#, coords.join(" "));
}

pub fn render_planar(p: &Polytope, point: Option<&Point>) -> Result<String, DiameterError> {
    if p.dim() != 2 {
        return Err(DiameterError::UnsupportedDimension(p.dim()));
    }
    let dp = difference_body(p);
    let tris = planar_triangulation(p)?;
    let (lo, hi) = dp.bounding_box();
    let size = (hi[0] - lo[0]).max(hi[1] - lo[1]) * 1.1;
    let (cx, cy) = ((lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0);
    let stroke = size / 400.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="{:.6} {:.6} {size:.6} {size:.6}">"#,
        cx - size / 2.0,
        -cy - size / 2.0,
    );
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    let ring = |q: &Polytope| -> Vec<Vec<f64>> { q.cycle().into_iter().map(|i| q.vertex(i).to_f64()).collect() };
    for (i, t) in tris.iter().enumerate() {
        let hue = (i * 360) / tris.len();
        let pts: Vec<Vec<f64>> = t.iter().map(Point::to_f64).collect();
        polygon(
            &mut out,
            &pts,
            &format!(r#"fill="hsl({hue},70%,75%)" stroke="white" stroke-width="{stroke:.6}""#),
        );
    }
    polygon(&mut out, &ring(&dp), &format!(r#"fill="none" stroke="black" stroke-width="{stroke:.6}""#));
    polygon(
        &mut out,
        &ring(p),
        &format!(r#"fill="rgba(40,40,40,0.25)" stroke="black" stroke-width="{:.6}""#, 2.0 * stroke),
    );
    if let Some(z) = point {
        for (a, b) in diameters_through(p, z)? {
            let (a, b) = (a.to_f64(), b.to_f64());
            let _ = writeln!(
                out,
                r#"  <line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="crimson" stroke-width="{stroke:.6}"/>"#,
                a[0], a[1], b[0], b[1]
            );
        }
        let z = z.to_f64();
        let _ = writeln!(out, r#"  <circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="crimson"/>"#, z[0], z[1], 2.0 * stroke);
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
