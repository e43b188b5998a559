//! Complex descriptions for the `triple` command.
//!
//! ```json
//! {"first": "a.json", "second": "b.json",
//!  "terms": [
//!    {"divisor": {"components": [{"at": ["v", "w"], "coeff": "1/1"}],
//!                 "exceptional": [{"edges": ["e", "f"], "coeff": 1}]}},
//!    {"polynomial": [[0, 0], [0, 1]]},
//!    {"green": "pair"}
//!  ]}
//! ```
//!
//! Divisors are given at level 1: `coeff` on a component point, and the
//! multiplicity of an exceptional curve. Polynomials are `c[i][j] s^i t^j`
//! in physical edge coordinates, the same on every cell. `green` is
//! `"pair"`, `{"first": v}` or `{"second": v}` and needs both factors to be
//! the same graph.

use std::path::Path;

use admissible_core::admissible::Admissible;
use admissible_core::complex_pairing::{
    continuous_triple, continuous_triple_swapped, discrete_triple, discrete_triple_physical,
    green_point_first, green_point_second, green_product_function, pullback_subdivide,
    CellFunction, LatticeDivisor, ProductComplex,
};
use admissible_core::poly::Poly2;
use admissible_core::PolarizedGraph;
use serde_json::{json, Value};

use crate::graph_file::{load_graph, parse_json, read_source, FileScalar};

pub enum Term<S> {
    Divisor(LatticeDivisor<S>),
    Function(CellFunction<S>),
}

pub struct ComplexSpec<S> {
    pub complex: ProductComplex<S>,
    pub terms: Vec<Term<S>>,
}

fn bad(source: &str, msg: impl std::fmt::Display) -> String {
    format!("{source}: {msg}")
}

fn graph_path(base: &Path, doc: &Value, key: &str, source: &str) -> Result<String, String> {
    let rel = doc
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| bad(source, format!("`{key}` must name a graph file")))?;
    Ok(base.join(rel).to_string_lossy().into_owned())
}

fn pair_of_ids<'a>(v: &'a Value, key: &str, source: &str) -> Result<(&'a str, &'a str), String> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2 && a.iter().all(Value::is_string))
        .ok_or_else(|| bad(source, format!("`{key}` must be a pair of ids")))?;
    Ok((arr[0].as_str().unwrap_or_default(), arr[1].as_str().unwrap_or_default()))
}

fn divisor<S: FileScalar>(
    c: &ProductComplex<S>,
    spec: &Value,
    source: &str,
) -> Result<LatticeDivisor<S>, String> {
    let mut d = LatticeDivisor::zero(c, 1).map_err(|e| bad(source, e))?;
    let coeff = |item: &Value| -> Result<S, String> {
        item.get("coeff")
            .map(S::from_json)
            .unwrap_or_else(|| Ok(S::one()))
            .map_err(|e| bad(source, e))
    };
    let items = |key: &str| spec.get(key).and_then(Value::as_array).cloned().unwrap_or_default();
    for item in items("components") {
        let (a, b) = pair_of_ids(&item, "at", source)?;
        let a = c.first.vertex_index(a).map_err(|e| bad(source, e))?;
        let b = c.second.vertex_index(b).map_err(|e| bad(source, e))?;
        let v = d.corner(a, b).clone() + coeff(&item)?;
        d.set_corner(a, b, v).map_err(|e| bad(source, e))?;
    }
    for item in items("exceptional") {
        let (e, f) = pair_of_ids(&item, "edges", source)?;
        let e1 = c.first.edge_index(e).ok_or_else(|| bad(source, format!("unknown edge `{e}`")))?;
        let e2 = c.second.edge_index(f).ok_or_else(|| bad(source, format!("unknown edge `{f}`")))?;
        let cell = admissible_core::complex_pairing::Cell { e1, e2, i: 0, j: 0 };
        let v = d.center(&cell).clone() + coeff(&item)? / S::from_i64(2);
        d.set_center(&cell, v).map_err(|e| bad(source, e))?;
    }
    Ok(d)
}

fn polynomial<S: FileScalar>(spec: &Value, source: &str) -> Result<Poly2<S>, String> {
    let rows = spec
        .as_array()
        .ok_or_else(|| bad(source, "`polynomial` must be an array of rows"))?;
    let mut coeffs = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| bad(source, "`polynomial` rows must be arrays"))?;
        coeffs.push(
            row.iter()
                .map(|x| S::from_json(x).map_err(|e| bad(source, e)))
                .collect::<Result<Vec<S>, String>>()?,
        );
    }
    Ok(Poly2::from_coeffs(coeffs))
}

fn green<S: FileScalar>(
    c: &ProductComplex<S>,
    adm: &mut Option<Admissible<S>>,
    spec: &Value,
    source: &str,
) -> Result<CellFunction<S>, String> {
    if c.first != c.second {
        return Err(bad(source, "green terms need both factors to be the same graph"));
    }
    if adm.is_none() {
        *adm = Some(Admissible::new(&c.first).map_err(|e| bad(source, e))?);
    }
    let a = adm.as_ref().expect("set above");
    let vertex = |key: &str| -> Result<Option<usize>, String> {
        match spec.get(key).and_then(Value::as_str) {
            Some(id) => Ok(Some(c.first.vertex_index(id).map_err(|e| bad(source, e))?)),
            None => Ok(None),
        }
    };
    let f = if spec.as_str() == Some("pair") {
        green_product_function(a)
    } else if let Some(v) = vertex("first")? {
        green_point_first(a, v)
    } else if let Some(v) = vertex("second")? {
        green_point_second(a, v)
    } else {
        return Err(bad(source, "`green` must be \"pair\", {\"first\": v} or {\"second\": v}"));
    };
    f.map_err(|e| bad(source, e))
}

pub fn load_complex<S: FileScalar>(path: &str) -> Result<ComplexSpec<S>, String> {
    let text = read_source(path).map_err(|e| e.to_string())?;
    let doc = parse_json(path, &text).map_err(|e| e.to_string())?;
    let base = Path::new(path).parent().unwrap_or(Path::new("."));
    let g1: PolarizedGraph<S> = load_graph(&graph_path(base, &doc, "first", path)?).map_err(|e| e.to_string())?;
    let g2: PolarizedGraph<S> = load_graph(&graph_path(base, &doc, "second", path)?).map_err(|e| e.to_string())?;
    let complex = ProductComplex::new(g1, g2).map_err(|e| bad(path, e))?;
    let specs = doc
        .get("terms")
        .and_then(Value::as_array)
        .filter(|t| t.len() == 3)
        .ok_or_else(|| bad(path, "`terms` must list exactly three terms"))?;
    let mut adm = None;
    let mut terms = Vec::with_capacity(3);
    for t in specs {
        let term = if let Some(d) = t.get("divisor") {
            Term::Divisor(divisor(&complex, d, path)?)
        } else if let Some(p) = t.get("polynomial") {
            Term::Function(CellFunction::uniform(complex.clone(), polynomial(p, path)?))
        } else if let Some(g) = t.get("green") {
            Term::Function(green(&complex, &mut adm, g, path)?)
        } else {
            return Err(bad(path, "each term needs `divisor`, `polynomial` or `green`"));
        };
        terms.push(term);
    }
    Ok(ComplexSpec { complex, terms })
}

/// Evaluate the triple pairing at `level`, and the continuous pairing on
/// request.
pub fn triple_report<S: FileScalar>(spec: &ComplexSpec<S>, level: usize, continuous: bool) -> Result<Value, String> {
    let c = &spec.complex;
    let at_level = spec
        .terms
        .iter()
        .map(|t| match t {
            Term::Divisor(d) => pullback_subdivide(c, d, level),
            Term::Function(f) => f.sample(level),
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let normalized = discrete_triple(c, &at_level[0], &at_level[1], &at_level[2]).map_err(|e| e.to_string())?;
    let physical =
        discrete_triple_physical(c, &at_level[0], &at_level[1], &at_level[2]).map_err(|e| e.to_string())?;
    let mut out = json!({
        "level": level,
        "discrete": normalized.to_json(),
        "discrete_physical": physical.to_json(),
    });
    if continuous {
        let fs: Vec<&CellFunction<S>> = spec
            .terms
            .iter()
            .filter_map(|t| match t {
                Term::Function(f) => Some(f),
                Term::Divisor(_) => None,
            })
            .collect();
        if fs.len() != 3 {
            return Err("--continuous needs three function terms (polynomial or green)".into());
        }
        let v = continuous_triple(fs[0], fs[1], fs[2]).map_err(|e| e.to_string())?;
        let w = continuous_triple_swapped(fs[0], fs[1], fs[2]).map_err(|e| e.to_string())?;
        out["continuous"] = v.to_json();
        out["continuous_swapped"] = w.to_json();
    }
    Ok(out)
}
