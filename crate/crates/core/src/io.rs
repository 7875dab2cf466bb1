//! Polytope JSON interchange: `{"dim": n, "vertices": [[q, ...], ...]}` where
//! each coordinate is a JSON number or a `"p/q"` string. Rationals are always
//! written back as strings so exact values never pass through `f64`.

use serde::ser::SerializeSeq;
use serde::Serializer;
use serde_json::{json, Value};
use thiserror::Error;

use crate::geom::{GeomError, Point, Polytope};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid polytope document: {0}")]
    Schema(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

pub fn parse_coordinate(v: &Value) -> Result<Rational, InputError> {
    match v {
        // the shortest round-trip decimal text is parsed exactly
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| InputError::Schema(e.to_string())),
        Value::String(s) => parse_rational(s).map_err(|e| InputError::Schema(e.to_string())),
        other => Err(InputError::Schema(format!("coordinate must be a number or string, got {other}"))),
    }
}

/// Parses a point written either as a JSON array or as `"x,y[,z]"`.
pub fn parse_point(text: &str) -> Result<Point, InputError> {
    let t = text.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t)?;
        let arr = v
            .as_array()
            .ok_or_else(|| InputError::Schema("point must be an array".into()))?;
        return Ok(Point::new(arr.iter().map(parse_coordinate).collect::<Result<_, _>>()?));
    }
    let coords = t
        .split(',')
        .map(|c| parse_rational(c).map_err(|e| InputError::Schema(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Point::new(coords))
}

pub fn points_from_value(v: &Value) -> Result<(usize, Vec<Point>), InputError> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| InputError::Schema("missing integer field `dim`".into()))? as usize;
    let verts = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| InputError::Schema("missing array field `vertices`".into()))?;
    let mut points = Vec::with_capacity(verts.len());
    for (i, row) in verts.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| InputError::Schema(format!("vertex {i} is not an array")))?;
        if row.len() != dim {
            return Err(InputError::Schema(format!(
                "vertex {i} has {} coordinates, expected {dim}",
                row.len()
            )));
        }
        points.push(Point::new(row.iter().map(parse_coordinate).collect::<Result<_, _>>()?));
    }
    Ok((dim, points))
}

pub fn polytope_from_value(v: &Value) -> Result<Polytope, InputError> {
    let (dim, points) = points_from_value(v)?;
    Ok(Polytope::from_points(&points, dim)?)
}

pub fn polytope_from_json(text: &str) -> Result<Polytope, InputError> {
    let v: Value = serde_json::from_str(text)?;
    polytope_from_value(&v)
}

pub fn point_to_value(p: &Point) -> Value {
    Value::Array(p.coords().iter().map(|c| Value::String(format_rational(c))).collect())
}

pub fn polytope_to_value(p: &Polytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(point_to_value).collect::<Vec<_>>(),
    })
}

pub fn rational_to_value(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub fn ser_point<S: Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(p.dim()))?;
    for c in p.coords() {
        seq.serialize_element(&format_rational(c))?;
    }
    seq.end()
}

pub fn ser_rationals<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(qs.len()))?;
    for q in qs {
        seq.serialize_element(&format_rational(q))?;
    }
    seq.end()
}
