//! JSON and CSV encodings for matrices, structure bundles, algebras, and
//! type maps.
//!
//! Exact scalars travel as `"p/q"` strings (plain integers allowed), float
//! scalars as JSON numbers. A document mixing the two lanes is rejected
//! rather than silently coerced: in exact mode a non-integer number has no
//! faithful representation.

use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::mat::Mat;
use crate::scalar::{Rat, Scalar};
use crate::twistor::TwistorReport;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("expected {0}")]
    Shape(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("number {0} is not exactly representable; write it as a \"p/q\" string")]
    NotExact(f64),
    #[error(transparent)]
    Algebra(#[from] LieError),
}

/// Parses `"p/q"`, `"n"`, or a JSON number into the scalar lane `S`.
pub fn parse_scalar<S: Scalar>(v: &Value) -> Result<S, JsonError> {
    match v {
        Value::String(s) => {
            // route through exact rational parsing so both lanes agree
            let r = Rat::from_str(s.trim()).map_err(|_| JsonError::BadScalar(s.clone()))?;
            Ok(rat_to_scalar(&r))
        }
        Value::Number(n) => {
            let x = n
                .as_f64()
                .ok_or_else(|| JsonError::BadScalar(n.to_string()))?;
            S::from_f64_checked(x).ok_or(JsonError::NotExact(x))
        }
        other => Err(JsonError::Shape(format!(
            "a scalar (string or number), got {other}"
        ))),
    }
}

// Exact rational into either lane.
fn rat_to_scalar<S: Scalar>(r: &Rat) -> S {
    use num::ToPrimitive;
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(p), Some(q)) => S::from_ratio(p, q),
        _ => S::from_f64_checked(r.to_f64().unwrap_or(f64::NAN))
            .expect("huge rationals only reach the float lane"),
    }
}

/// Encodes a scalar: exact lane as a string, float lane as a number.
pub fn scalar_to_value<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        Value::String(x.to_string())
    } else {
        json!(x.approx())
    }
}

/// Parses a matrix given as a rectangular array of arrays.
pub fn parse_matrix<S: Scalar>(v: &Value) -> Result<Mat<S>, JsonError> {
    let rows = v
        .as_array()
        .ok_or_else(|| JsonError::Shape("a matrix as an array of rows".into()))?;
    if rows.is_empty() {
        return Err(JsonError::Shape("a nonempty matrix".into()));
    }
    let mut out = Vec::with_capacity(rows.len());
    let width = rows[0]
        .as_array()
        .map(|r| r.len())
        .ok_or_else(|| JsonError::Shape("each row as an array".into()))?;
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| JsonError::Shape("each row as an array".into()))?;
        if cells.len() != width {
            return Err(JsonError::Shape("rows of equal length".into()));
        }
        out.push(
            cells
                .iter()
                .map(parse_scalar::<S>)
                .collect::<Result<Vec<S>, JsonError>>()?,
        );
    }
    Ok(Mat::from_rows(out))
}

pub fn matrix_to_value<S: Scalar>(m: &Mat<S>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| scalar_to_value(m.at(i, j))).collect())
            })
            .collect(),
    )
}

/// Parses `{ "dim": n, "brackets": [ { "i", "j", "result": [ { "k",
/// "coeff" } ] } ] }` or `{ "dim": n, "equations": "d e3 = - e1^e2..." }`.
pub fn parse_lie_algebra<S: Scalar>(v: &Value) -> Result<LieAlgebra<S>, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| JsonError::Shape("an algebra object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| JsonError::Shape("a `dim` count".into()))? as usize;
    if let Some(eqs) = obj.get("equations") {
        let text = eqs
            .as_str()
            .ok_or_else(|| JsonError::Shape("`equations` as a string".into()))?;
        return Ok(LieAlgebra::from_structure_equation_text(dim, text)?);
    }
    let brackets = obj
        .get("brackets")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Shape("a `brackets` array".into()))?;
    let mut entries = Vec::new();
    for b in brackets {
        let get_idx = |key: &str| -> Result<usize, JsonError> {
            b.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| JsonError::Shape(format!("a `{key}` index in each bracket")))
        };
        let i = get_idx("i")?;
        let j = get_idx("j")?;
        let result = b
            .get("result")
            .and_then(Value::as_array)
            .ok_or_else(|| JsonError::Shape("a `result` array in each bracket".into()))?;
        for term in result {
            let k = term
                .get("k")
                .and_then(Value::as_u64)
                .ok_or_else(|| JsonError::Shape("a `k` index in each term".into()))?
                as usize;
            let coeff = term
                .get("coeff")
                .ok_or_else(|| JsonError::Shape("a `coeff` in each term".into()))?;
            entries.push((i, j, k, parse_scalar::<S>(coeff)?));
        }
    }
    Ok(LieAlgebra::from_structure_constants(dim, &entries)?)
}

pub fn lie_algebra_to_value<S: Scalar>(g: &LieAlgebra<S>) -> Value {
    let mut brackets: Vec<Value> = Vec::new();
    let mut current: Option<(usize, usize, Vec<Value>)> = None;
    for (i, j, k, v) in g.entries() {
        match &mut current {
            Some((ci, cj, terms)) if *ci == i && *cj == j => {
                terms.push(json!({ "k": k, "coeff": scalar_to_value(&v) }));
            }
            _ => {
                if let Some((ci, cj, terms)) = current.take() {
                    brackets.push(json!({ "i": ci, "j": cj, "result": terms }));
                }
                current = Some((i, j, vec![json!({ "k": k, "coeff": scalar_to_value(&v) })]));
            }
        }
    }
    if let Some((ci, cj, terms)) = current {
        brackets.push(json!({ "i": ci, "j": cj, "result": terms }));
    }
    json!({ "dim": g.dim(), "brackets": brackets })
}

/// Input to the verifier: a structure matrix, optionally a second structure
/// and a base algebra (its cotangent double carries the bracket).
#[derive(Clone, Debug)]
pub struct StructureBundle<S> {
    pub structure: Mat<S>,
    pub pair: Option<Mat<S>>,
    pub base_algebra: Option<LieAlgebra<S>>,
}

/// Parses `{ "structure": [[..]], "pair": [[..]], "algebra": {..} }`.
pub fn parse_bundle<S: Scalar>(text: &str) -> Result<StructureBundle<S>, JsonError> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| JsonError::Shape("a top-level bundle object".into()))?;
    let structure = parse_matrix::<S>(
        obj.get("structure")
            .ok_or_else(|| JsonError::Shape("a `structure` matrix".into()))?,
    )?;
    let pair = obj.get("pair").map(parse_matrix::<S>).transpose()?;
    let base_algebra = obj.get("algebra").map(parse_lie_algebra::<S>).transpose()?;
    Ok(StructureBundle {
        structure,
        pair,
        base_algebra,
    })
}

pub fn bundle_to_json<S: Scalar>(b: &StructureBundle<S>) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("structure".into(), matrix_to_value(&b.structure));
    if let Some(p) = &b.pair {
        obj.insert("pair".into(), matrix_to_value(p));
    }
    if let Some(g) = &b.base_algebra {
        obj.insert("algebra".into(), lie_algebra_to_value(g));
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("serialization cannot fail")
}

/// CSV rows `a,b,c,type,exact` for a sampled type map.
pub fn type_map_to_csv(tm: &crate::hyper::TypeMap) -> String {
    let mut out = String::from("a,b,c,type,exact\n");
    for s in &tm.samples {
        out.push_str(&format!("{},{},{},{},{}\n", s.a, s.b, s.c, s.ty, s.exact));
    }
    out
}

pub fn type_map_to_json(tm: &crate::hyper::TypeMap) -> String {
    let samples: Vec<Value> = tm
        .samples
        .iter()
        .map(|s| json!({ "a": s.a, "b": s.b, "c": s.c, "type": s.ty, "exact": s.exact }))
        .collect();
    serde_json::to_string_pretty(&json!({ "samples": samples }))
        .expect("serialization cannot fail")
}

/// Twistor report: samples plus a regime summary.
pub fn twistor_report_to_json(r: &TwistorReport) -> String {
    let samples: Vec<Value> = r
        .samples
        .iter()
        .map(|s| {
            json!({
                "a": s.a,
                "b": s.b,
                "c": s.c,
                "fiber_type": s.fiber_type,
                "twistor_type": s.twistor_type,
            })
        })
        .collect();
    let doc = json!({
        "samples": samples,
        "summary": {
            "min_twistor_type": r.min_twistor_type,
            "max_twistor_type": r.max_twistor_type,
            "regime": r.regime.to_string(),
            "s2_factor": if r.s2_symplectic { "symplectic" } else { "complex" },
        },
    });
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

pub fn twistor_report_to_csv(r: &TwistorReport) -> String {
    let mut out = String::from("a,b,c,fiber_type,twistor_type\n");
    for s in &r.samples {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.a, s.b, s.c, s.fiber_type, s.twistor_type
        ));
    }
    out
}
