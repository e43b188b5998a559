//! Graph files: `{"vertices": [{"id", "q"}], "edges": [{"id", "ends", "length"}]}`.
//!
//! In exact mode a length is a string `"<int>/<int>"` or a JSON integer.
//! In float mode any JSON number is accepted as well.

use std::io::Read;
use std::path::Path;

use admissible_core::graph::{validate, RawEdge, RawGraph, RawVertex, ValidationError};
use admissible_core::{PolarizedGraph, Rational, Scalar};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("{source_name}: cannot read: {message}")]
    Io { source_name: String, message: String },
    #[error("{source_name}: line {line}, column {column}: {message}")]
    Syntax {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{source_name}: field `{field}`: {message}")]
    Field {
        source_name: String,
        field: String,
        message: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}: {1}")]
    Invalid(String, ValidationError),
}

/// Scalars that can be read from and written to graph and report files.
pub trait FileScalar: Scalar {
    /// Backend name used in reports.
    const NAME: &'static str;

    fn from_json(v: &Value) -> Result<Self, String>;

    fn to_json(&self) -> Value;

    /// Parse `"<int>/<int>"` or an integer, for command-line values.
    fn from_text(s: &str) -> Result<Self, String> {
        Self::from_json(&Value::String(s.to_string())).or_else(|e| match s.trim().parse::<i64>() {
            Ok(n) => Ok(Self::from_i64(n)),
            Err(_) => Err(e),
        })
    }
}

/// `"p/q"` with `q > 0`.
pub fn parse_ratio(s: &str) -> Result<Rational, String> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| format!("expected \"<int>/<int>\", got \"{s}\""))?;
    let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in \"{s}\""))?;
    let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in \"{s}\""))?;
    if !q.is_positive() {
        return Err(format!("denominator must be positive in \"{s}\""));
    }
    Ok(Rational::new(p, q))
}

impl FileScalar for Rational {
    const NAME: &'static str = "exact";

    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => parse_ratio(s),
            Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(Rational::from_integer(BigInt::from(i))),
                None => Err(format!(
                    "non-integer number {n} in exact mode; write it as \"<int>/<int>\""
                )),
            },
            other => Err(format!("expected a rational string, got {other}")),
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl FileScalar for f64 {
    const NAME: &'static str = "float";

    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => parse_ratio(s).map(|r| Scalar::to_f64(&r)),
            Value::Number(n) => n.as_f64().ok_or_else(|| format!("bad number {n}")),
            other => Err(format!("expected a number, got {other}")),
        }
    }

    fn to_json(&self) -> Value {
        json!(self)
    }
}

/// Length as written to a graph file: always `"p/q"` in exact mode.
fn length_json<S: FileScalar>(x: &S) -> Value {
    match x.to_json() {
        Value::String(s) if !s.contains('/') => Value::String(format!("{s}/1")),
        v => v,
    }
}

pub fn read_source(path: &str) -> Result<String, ParseError> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(Path::new(path)).map(|t| text = t)
    };
    res.map_err(|e| ParseError::Io {
        source_name: path.to_string(),
        message: e.to_string(),
    })?;
    Ok(text)
}

pub fn parse_json(source_name: &str, text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        source_name: source_name.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn field_err(source_name: &str, field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field {
        source_name: source_name.to_string(),
        field: field.into(),
        message: message.into(),
    }
}

/// Decode a graph document without validating it.
pub fn raw_from_json<S: FileScalar>(source_name: &str, doc: &Value) -> Result<RawGraph<S>, ParseError> {
    let list = |key: &str| {
        doc.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| field_err(source_name, key, "missing or not an array"))
    };
    let mut raw = RawGraph {
        vertices: Vec::new(),
        edges: Vec::new(),
    };
    for (i, v) in list("vertices")?.iter().enumerate() {
        let id = v
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| field_err(source_name, format!("vertices[{i}].id"), "missing string"))?;
        let q = match v.get("q") {
            None => 0,
            Some(q) => q
                .as_i64()
                .ok_or_else(|| field_err(source_name, format!("vertices[{i}].q"), "expected an integer"))?,
        };
        raw.vertices.push(RawVertex { id: id.to_string(), q });
    }
    for (i, e) in list("edges")?.iter().enumerate() {
        let id = e
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| field_err(source_name, format!("edges[{i}].id"), "missing string"))?;
        let ends = e
            .get("ends")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2 && a.iter().all(Value::is_string))
            .ok_or_else(|| field_err(source_name, format!("edges[{i}].ends"), "expected two vertex ids"))?;
        let length = e
            .get("length")
            .ok_or_else(|| field_err(source_name, format!("edges[{i}].length"), "missing"))
            .and_then(|l| S::from_json(l).map_err(|m| field_err(source_name, format!("edges[{i}].length"), m)))?;
        raw.edges.push(RawEdge {
            id: id.to_string(),
            ends: [
                ends[0].as_str().unwrap_or_default().to_string(),
                ends[1].as_str().unwrap_or_default().to_string(),
            ],
            length,
        });
    }
    Ok(raw)
}

/// Parse and validate a graph document.
pub fn graph_from_str<S: FileScalar>(source_name: &str, text: &str) -> Result<PolarizedGraph<S>, LoadError> {
    let doc = parse_json(source_name, text)?;
    let raw = raw_from_json(source_name, &doc)?;
    validate(&raw).map_err(|e| LoadError::Invalid(source_name.to_string(), e))
}

/// Read a graph from a path, or from stdin when the path is `-`.
pub fn load_graph<S: FileScalar>(path: &str) -> Result<PolarizedGraph<S>, LoadError> {
    let text = read_source(path)?;
    graph_from_str(path, &text)
}

pub fn graph_to_json<S: FileScalar>(g: &PolarizedGraph<S>) -> Value {
    let raw = g.to_raw();
    json!({
        "vertices": raw.vertices.iter().map(|v| json!({"id": v.id, "q": v.q})).collect::<Vec<_>>(),
        "edges": raw.edges.iter().map(|e| json!({
            "id": e.id,
            "ends": [e.ends[0], e.ends[1]],
            "length": length_json(&e.length),
        })).collect::<Vec<_>>(),
    })
}

pub fn graph_to_string<S: FileScalar>(g: &PolarizedGraph<S>) -> String {
    serde_json::to_string_pretty(&graph_to_json(g)).expect("values serialize")
}
