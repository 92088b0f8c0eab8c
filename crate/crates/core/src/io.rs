//! Text formats: canonical JSON, representations, integer matrices and DOT.
//!
//! Every external format numbers vertices from 1. JSON objects are written
//! with sorted keys, compact, followed by a single LF.

use std::fmt::Write as _;

use num::{BigInt, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::builder::SummandDecomposition;
use crate::diagram::ArrowDiagram;
use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};
use crate::quiver::TypeAQuiver;
use crate::rep::{DeltaVector, Representation};
use crate::seaweed::SeaweedReport;

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

/// Rebuild every object with its keys in lexicographic order.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonicalize(v));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        other => other,
    }
}

pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(parse_err)?;
    let mut s = serde_json::to_string(&canonicalize(v)).map_err(parse_err)?;
    s.push('\n');
    Ok(s)
}

/// Integers as JSON numbers when they fit in `i64`, everything else as `"p/q"`.
pub fn rational_to_json(x: &Rational) -> Value {
    if x.is_integer() {
        if let Some(i) = x.numer().to_i64() {
            return json!(i);
        }
    }
    Value::String(x.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Parse(format!("non-integer number {n}; write fractions as \"p/q\""))),
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}"))),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

pub fn matrix_to_json(m: &RationalMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational_to_json).collect()))
            .collect(),
    )
}

/// Rows of rationals; `cols` is required when there are no rows.
pub fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<RationalMatrix> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    if arr.len() != rows {
        return Err(Error::Shape(format!("expected {rows} rows, got {}", arr.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for r in arr {
        let r = r.as_array().ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        if r.len() != cols {
            return Err(Error::Shape(format!("expected {cols} columns, got {}", r.len())));
        }
        out.push(r.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?);
    }
    Ok(RationalMatrix::from_rows(out, cols))
}

pub fn representation_to_value(m: &Representation) -> Value {
    let q = m.quiver();
    let maps = |beta: bool| -> Value {
        Value::Array(
            (0..q.edges().len())
                .map(|e| {
                    let f = if beta { m.beta(e) } else { m.alpha(e) };
                    f.map_or(Value::Null, matrix_to_json)
                })
                .collect(),
        )
    };
    json!({
        "orientation": q.orientation_string(),
        "dims": m.dims(),
        "alpha": maps(false),
        "beta": maps(true),
    })
}

pub fn representation_to_json(m: &Representation) -> Result<String> {
    canonical_json(&representation_to_value(m))
}

pub fn representation_from_value(v: &Value) -> Result<Representation> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected an object".into()))?;
    let field = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
    let q: TypeAQuiver = field("orientation")?
        .as_str()
        .ok_or_else(|| Error::Parse("orientation must be a string".into()))?
        .parse()?;
    let dims: Vec<usize> = serde_json::from_value(field("dims")?.clone()).map_err(parse_err)?;
    if dims.len() != q.vertex_count() {
        return Err(Error::Length {
            expected: q.vertex_count(),
            got: dims.len(),
        });
    }
    let read = |key: &str, beta: bool| -> Result<Vec<Option<RationalMatrix>>> {
        let arr = field(key)?
            .as_array()
            .ok_or_else(|| Error::Parse(format!("{key} must be an array")))?;
        if arr.len() != q.edges().len() {
            return Err(Error::Length {
                expected: q.edges().len(),
                got: arr.len(),
            });
        }
        arr.iter()
            .enumerate()
            .map(|(e, m)| match (q.alpha_ends(e), m) {
                (None, Value::Null) => Ok(None),
                (Some((s, t)), m) if !m.is_null() => {
                    let (r, c) = if beta { (dims[s], dims[t]) } else { (dims[t], dims[s]) };
                    matrix_from_json(m, r, c).map(Some)
                }
                _ => Err(Error::Shape(format!("{key} on edge {} does not match the orientation", e + 1))),
            })
            .collect()
    };
    let alpha = read("alpha", false)?;
    let beta = read("beta", true)?;
    Representation::new(q, dims, alpha, beta)
}

pub fn representation_from_json(s: &str) -> Result<Representation> {
    let v: Value = serde_json::from_str(s).map_err(parse_err)?;
    representation_from_value(&v)
}

/// `n` lines of `n` space-separated integers.
pub fn parse_matrix_text(s: &str) -> Result<Vec<Vec<i64>>> {
    let rows: Vec<Vec<i64>> = s
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    let n = rows.len();
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::Shape(format!("expected {n} entries per row, got {}", r.len())));
    }
    Ok(rows)
}

pub fn format_matrix_text(x: &[Vec<i64>]) -> String {
    let mut s = String::new();
    for row in x {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

/// Comma-separated non-negative integers.
pub fn parse_delta_dim(s: &str) -> Result<DeltaVector> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad multiplicity {p:?}")))
        })
        .collect()
}

pub fn report_to_json(r: &SeaweedReport) -> Result<String> {
    canonical_json(r)
}

pub fn report_from_json(s: &str) -> Result<SeaweedReport> {
    let r: SeaweedReport = serde_json::from_str(s).map_err(parse_err)?;
    if r.richardson.len() != r.n || r.richardson.iter().any(|row| row.len() != r.n) {
        return Err(Error::Shape("richardson matrix is not n x n".into()));
    }
    Ok(r)
}

pub fn report_to_text(r: &SeaweedReport) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let mut s = String::new();
    let _ = writeln!(s, "n: {}", r.n);
    let _ = writeln!(s, "a: {}", join(&r.a));
    let _ = writeln!(s, "b: {}", join(&r.b));
    let _ = writeln!(s, "orientation: {}", r.orientation);
    let _ = writeln!(s, "e: {}", join(&r.e));
    let _ = writeln!(s, "d: {}", join(&r.d));
    let _ = writeln!(s, "dim_q: {}", r.dim_q);
    let _ = writeln!(s, "dim_l: {}", r.dim_l);
    let _ = writeln!(s, "dim_n: {}", r.dim_n);
    let _ = writeln!(s, "ad_rank: {}", r.ad_rank);
    let _ = writeln!(s, "verified: {}", r.verified);
    s.push_str("richardson:\n");
    s.push_str(&format_matrix_text(&r.richardson));
    s
}

pub fn diagram_to_value(g: &ArrowDiagram) -> Value {
    json!({
        "nodes": g.nodes.iter().map(|n| json!({
            "vertex": n.vertex + 1,
            "row": n.row,
            "number": n.number,
        })).collect::<Vec<_>>(),
        "edges": g.edges,
    })
}

pub fn quiver_to_dot(q: &TypeAQuiver) -> String {
    let mut s = String::from("digraph quiver {\n  rankdir=LR;\n");
    for v in 0..q.vertex_count() {
        let _ = writeln!(s, "  v{0} [label=\"{0}\"];", v + 1);
    }
    for e in 0..q.edges().len() {
        if let Some((a, b)) = q.alpha_ends(e) {
            let _ = writeln!(s, "  v{} -> v{};", a + 1, b + 1);
        }
    }
    s.push_str("}\n");
    s
}

pub fn decomposition_to_value(m: &SummandDecomposition) -> Value {
    let summands: Vec<Value> = m
        .summands
        .iter()
        .map(|s| {
            json!({
                "support": s.support,
                "pieces": s.history.pieces.iter().map(|(seg, j)| json!({
                    "segment": seg + 1,
                    "support": j,
                })).collect::<Vec<_>>(),
                "dims": s.rep.dims(),
            })
        })
        .collect();
    let multiplicities: Vec<Value> = m
        .multiplicities()
        .into_iter()
        .map(|(k, c)| json!({ "support": k, "multiplicity": c }))
        .collect();
    json!({
        "orientation": m.quiver.orientation_string(),
        "delta_dim": m.delta,
        "summands": summands,
        "multiplicities": multiplicities,
        "representation": representation_to_value(&m.rep),
        "diagram": diagram_to_value(&ArrowDiagram::from_decomposition(m)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_M;
    use crate::linalg::rat;
    use crate::rep::verma;
    use crate::seaweed::Seaweed;

    #[test]
    fn keys_are_sorted() {
        let s = canonical_json(&json!({"b": 1, "a": {"d": 2, "c": 3}})).unwrap();
        assert_eq!(s, "{\"a\":{\"c\":3,\"d\":2},\"b\":1}\n");
    }

    #[test]
    fn representation_round_trip() {
        let q: TypeAQuiver = "<,>,.,<".parse().unwrap();
        let mut m = build_M(&q, &[1, 2, 1, 1, 2]).unwrap().rep;
        let b = m.beta(0).unwrap().scale(&(rat(1) / rat(3)));
        m.set_map(crate::quiver::Arrow::Beta(0), b);
        let s = representation_to_json(&m).unwrap();
        let back = representation_from_json(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(representation_to_json(&back).unwrap(), s);
        let v = verma(&q, 0);
        assert_eq!(representation_from_json(&representation_to_json(&v).unwrap()).unwrap(), v);
    }

    #[test]
    fn representation_rejects_bad_input() {
        for bad in [
            "",
            "[]",
            "{\"orientation\":\"x\",\"dims\":[1],\"alpha\":[],\"beta\":[]}",
            "{\"orientation\":\"\",\"dims\":[1,2],\"alpha\":[],\"beta\":[]}",
            "{\"orientation\":\">\",\"dims\":[1,1],\"alpha\":[[[1]]],\"beta\":[[[\"1/0\"]]]}",
            "{\"orientation\":\">\",\"dims\":[1,1],\"alpha\":[[[1,2]]],\"beta\":[[[0]]]}",
            "{\"orientation\":\">\",\"dims\":[1,1],\"alpha\":[null],\"beta\":[[[0]]]}",
        ] {
            assert!(representation_from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn matrix_text() {
        let x = parse_matrix_text("0 1\n0 0\n").unwrap();
        assert_eq!(x, [[0, 1], [0, 0]]);
        assert_eq!(format_matrix_text(&x), "0 1\n0 0\n");
        assert!(parse_matrix_text("").is_err());
        assert!(parse_matrix_text("1 2\n3").is_err());
        assert!(parse_matrix_text("1 x\n3 4").is_err());
    }

    #[test]
    fn report_round_trip() {
        let r = Seaweed::from_parts(&[3, 1, 5], &[2, 6, 1]).unwrap().verify().unwrap();
        let s = report_to_json(&r).unwrap();
        assert!(s.starts_with("{\"a\":[3,1,5],\"ad_rank\":19,\"b\":[2,6,1],\"d\":[3,2,3,8,2],"));
        assert!(s.ends_with("}\n"));
        let back = report_from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(report_to_json(&back).unwrap(), s);
    }

    #[test]
    fn delta_dim_parsing() {
        assert_eq!(parse_delta_dim("1,2, 3").unwrap(), [1, 2, 3]);
        assert!(parse_delta_dim("1,-2").is_err());
        assert!(parse_delta_dim("").is_err());
    }

    #[test]
    fn quiver_dot() {
        let q: TypeAQuiver = "<,>".parse().unwrap();
        let s = quiver_to_dot(&q);
        assert!(s.contains("v2 -> v1;") && s.contains("v2 -> v3;"));
    }
}
