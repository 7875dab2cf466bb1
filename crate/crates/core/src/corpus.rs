//! Bundled fixtures with pinned expected values, and the checks run over them.

use serde::Serialize;
use serde_json::Value;

use crate::counterexample::{build_bodies, probe_all};
use crate::diameters::na_exact;
use crate::gauge::{mixed_area_identity, theorem2_bound_check};
use crate::geom::Polytope;
use crate::io::{polytope_from_value, InputError};
use crate::minkowski::{difference_body, rogers_shephard_check};
use crate::position::general_relative_position;
use crate::scalar::{format_rational, int, parse_rational, pow, Rational};

const FILES: &[(&str, &str)] = &[
    ("triangle", include_str!("../corpus/triangle.json")),
    ("tetrahedron", include_str!("../corpus/tetrahedron.json")),
    ("quad-parallel", include_str!("../corpus/quad-parallel.json")),
    ("quad-kite", include_str!("../corpus/quad-kite.json")),
    ("quad-skew", include_str!("../corpus/quad-skew.json")),
    ("hexagon-perturbed", include_str!("../corpus/hexagon-perturbed.json")),
    ("tetra-generic-a", include_str!("../corpus/tetra-generic-a.json")),
    ("tetra-generic-b", include_str!("../corpus/tetra-generic-b.json")),
    ("counterexample-6", include_str!("../corpus/counterexample-6.json")),
];

#[derive(Debug, Clone)]
pub enum CorpusBody {
    Polytope(Polytope),
    Counterexample { depth: usize },
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub body: CorpusBody,
    pub expected: Value,
}

pub fn parse_entry(name: &str, text: &str) -> Result<CorpusEntry, InputError> {
    let v: Value = serde_json::from_str(text)?;
    let body = if v.get("kind").and_then(Value::as_str) == Some("counterexample") {
        let depth = v
            .get("depth")
            .and_then(Value::as_u64)
            .ok_or_else(|| InputError::Schema("counterexample entry needs `depth`".into()))?;
        CorpusBody::Counterexample { depth: depth as usize }
    } else {
        CorpusBody::Polytope(polytope_from_value(&v)?)
    };
    Ok(CorpusEntry {
        name: name.to_string(),
        body,
        expected: v.get("expected").cloned().unwrap_or(Value::Null),
    })
}

pub fn bundled() -> Vec<CorpusEntry> {
    FILES
        .iter()
        .map(|(name, text)| parse_entry(name, text).expect("bundled fixture parses"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub entry: String,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

fn expected_rational(expected: &Value, key: &str) -> Option<Rational> {
    expected.get(key).and_then(Value::as_str).and_then(|s| parse_rational(s).ok())
}

fn outcome(entry: &str, check: &str, pass: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        entry: entry.to_string(),
        check: check.to_string(),
        pass,
        detail,
    }
}

fn check_polytope(name: &str, p: &Polytope, expected: &Value) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let n = p.dim();
    let generic = general_relative_position(p).holds;
    let want_generic = expected.get("general_position").and_then(Value::as_bool);
    out.push(outcome(
        name,
        "general_position",
        want_generic.map_or(true, |w| w == generic),
        format!("holds = {generic}"),
    ));

    match rogers_shephard_check(p) {
        Ok(r) => {
            let pinned = expected_rational(expected, "integral");
            let pass = pinned.as_ref().map_or(true, |q| *q == r.integral);
            out.push(outcome(name, "rogers_shephard", pass, format!("integral = {}", format_rational(&r.integral))));
        }
        Err(e) => out.push(outcome(name, "rogers_shephard", false, e.to_string())),
    }

    if !generic {
        return out;
    }
    match na_exact(p) {
        Ok(r) => {
            let na = r.value;
            let pinned = expected_rational(expected, "na");
            out.push(outcome(
                name,
                "na_exact",
                pinned.as_ref().map_or(true, |q| *q == na),
                format!("N_a = {}", format_rational(&na)),
            ));
            let top = pow(&int(2), n) - int(1);
            let in_range = na > int(n as i64) && na <= top;
            let sharp = (na == top) == p.is_simplex();
            out.push(outcome(name, "bounds", in_range && sharp, format!("{n} < {} <= {}", format_rational(&na), top)));
            if n == 2 {
                let ratio = difference_body(p).volume() / (int(2) * p.volume());
                out.push(outcome(name, "planar_identity", ratio == na, format!("V(DP)/(2V) = {}", format_rational(&ratio))));
                let id = mixed_area_identity(p);
                let (pass, detail) = match id {
                    Ok(i) => (
                        i.holds,
                        format!(
                            "V(DK,K) + V(DK,-K) = {} + {}, V(DK) = {}",
                            format_rational(&i.with_k),
                            format_rational(&i.with_reflection),
                            format_rational(&i.area_dk)
                        ),
                    ),
                    Err(e) => (false, e.to_string()),
                };
                out.push(outcome(name, "mixed_area_identity", pass, detail));
                let t2 = theorem2_bound_check(p);
                let detail = t2.as_ref().map_or_else(|e| e.to_string(), |r| format!("1 <= {} <= 3", format_rational(&r.na)));
                out.push(outcome(name, "theorem2", t2.is_ok(), detail));
            }
        }
        Err(e) => out.push(outcome(name, "na_exact", false, e.to_string())),
    }
    out
}

fn check_counterexample(name: &str, depth: usize, expected: &Value) -> Vec<CheckOutcome> {
    let reports = build_bodies(depth).map_err(|e| e.to_string()).and_then(|inst| probe_all(&inst).map_err(|e| e.to_string()));
    match reports {
        Ok(rs) => {
            let pinned = expected.get("ratios_squared").and_then(Value::as_array);
            rs.iter()
                .enumerate()
                .map(|(i, r)| {
                    let matches = pinned
                        .and_then(|a| a.get(i))
                        .and_then(Value::as_str)
                        .and_then(|s| parse_rational(s).ok())
                        .map_or(true, |q| q == r.ratio_squared);
                    outcome(
                        name,
                        &format!("probe_n{}", r.n),
                        r.pass && matches,
                        format!("ratio^2 = {}, bound^2 = {}", format_rational(&r.ratio_squared), format_rational(&r.bound_squared)),
                    )
                })
                .collect()
        }
        Err(e) => vec![outcome(name, "build", false, e)],
    }
}

pub fn run_checks(entries: &[CorpusEntry]) -> Vec<CheckOutcome> {
    entries
        .iter()
        .flat_map(|e| match &e.body {
            CorpusBody::Polytope(p) => check_polytope(&e.name, p, &e.expected),
            CorpusBody::Counterexample { depth } => check_counterexample(&e.name, *depth, &e.expected),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_passes() {
        let outcomes = run_checks(&bundled());
        assert_eq!(outcomes.len(), 45);
        for o in &outcomes {
            assert!(o.pass, "{o:?}");
        }
    }

    #[test]
    fn wrong_pin_is_caught() {
        let mut entry = bundled().remove(0);
        entry.expected["na"] = Value::String("5/2".into());
        let outcomes = run_checks(&[entry]);
        assert!(outcomes.iter().any(|o| o.check == "na_exact" && !o.pass));
    }
}
