//! Report bodies for the graph commands.

use admissible_core::admissible::{Admissible, InvariantBundle};
use admissible_core::closed_forms::{additive_bundle, elementary_bundle};
use admissible_core::conjectures::{
    epsilon_bounds, lambda_bound, phi_bound, trivial_bounds, BoundReport, Verdict,
};
use admissible_core::PolarizedGraph;
use serde_json::{json, Map, Value};

use crate::graph_file::FileScalar;

pub const SCHEMA_VERSION: u32 = 1;

/// Fields shared by every JSON report.
pub fn header(command: &str, backend: Option<&str>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("tool".into(), json!("admissible"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    if let Some(b) = backend {
        m.insert("backend".into(), json!(b));
    }
    m
}

pub fn bundle_json<S: FileScalar>(b: &InvariantBundle<S>) -> Value {
    let types: Map<String, Value> = b
        .type_lengths
        .iter()
        .map(|(i, l)| (i.to_string(), l.to_json()))
        .collect();
    json!({
        "genus": b.genus,
        "total_length": b.total_length.to_json(),
        "tau": b.tau.to_json(),
        "epsilon": b.epsilon.to_json(),
        "phi": b.phi.to_json(),
        "lambda": b.lambda.to_json(),
        "type_lengths": types,
    })
}

pub fn bound_json<S: FileScalar>(r: &BoundReport<S>) -> Value {
    let mut v = json!({
        "bound": r.bound.as_str(),
        "left": r.left.to_json(),
        "right": r.right.to_json(),
        "slack": r.slack.to_json(),
        "verdict": r.verdict.as_str(),
    });
    if let Some(c) = &r.c {
        v["c"] = c.to_json();
    }
    v
}

fn decomposition_json<S: FileScalar>(g: &PolarizedGraph<S>) -> Value {
    let pieces = g.decompose_pointed_sum();
    let list: Vec<Value> = pieces
        .iter()
        .map(|p| {
            let ids: Vec<&str> = p.edge_indices.iter().map(|&e| g.edges()[e].id.as_str()).collect();
            json!({"bridge": p.is_bridge, "edges": ids, "vertices": p.graph.vertex_count()})
        })
        .collect();
    json!({
        "pieces": pieces.len(),
        "bridges": pieces.iter().filter(|p| p.is_bridge).count(),
        "components": list,
    })
}

/// Per-graph result, with any failed internal cross-check.
pub struct Outcome {
    pub value: Value,
    pub internal_errors: Vec<String>,
}

/// Invariants, bound reports, decomposition, and cross-checks against the
/// alternative formulas.
pub fn invariants_entry<S: FileScalar>(source: &str, g: &PolarizedGraph<S>) -> Result<Outcome, String> {
    let adm = Admissible::new(g).map_err(|e| format!("{source}: {e}"))?;
    let b = adm.bundle();
    let mut internal = Vec::new();
    if !b.lambda_via_phi().approx_eq(&b.lambda) {
        internal.push(format!("{source}: lambda cross-formula disagrees"));
    }
    match additive_bundle(g) {
        Ok(sum) if sum.approx_eq(&b) => {}
        Ok(_) => internal.push(format!("{source}: pointed-sum additivity fails")),
        Err(e) => internal.push(format!("{source}: {e}")),
    }
    if let Some(e) = elementary_bundle(g) {
        if !e.approx_eq(&b) {
            internal.push(format!("{source}: elementary closed form disagrees"));
        }
    }
    let mut bounds = Vec::new();
    if b.genus >= 2 {
        if let Ok(r) = phi_bound(&b, None) {
            bounds.push(bound_json(&r));
        }
        if let Ok(r) = lambda_bound(&b) {
            bounds.push(bound_json(&r));
        }
        if g.is_two_edge_connected() {
            if let Ok(rs) = epsilon_bounds(&b, None) {
                bounds.extend(rs.iter().map(bound_json));
            }
        }
        if let Ok(rs) = trivial_bounds(&b) {
            bounds.extend(rs.iter().map(bound_json));
        }
    }
    let mut value = json!({"source": source});
    let obj = value.as_object_mut().expect("object");
    if let Value::Object(m) = bundle_json(&b) {
        obj.extend(m);
    }
    obj.insert("elementary".into(), json!(g.is_elementary()));
    obj.insert("bounds".into(), Value::Array(bounds));
    obj.insert("decomposition".into(), decomposition_json(g));
    obj.insert(
        "cross_checks".into(),
        json!(if internal.is_empty() { "ok" } else { "failed" }),
    );
    Ok(Outcome {
        value,
        internal_errors: internal,
    })
}

pub fn decompose_entry<S: FileScalar>(source: &str, g: &PolarizedGraph<S>) -> Result<Value, String> {
    let pieces = g.decompose_pointed_sum();
    let genus = g.genus();
    let mut list = Vec::new();
    for p in &pieces {
        let ids: Vec<&str> = p.edge_indices.iter().map(|&e| g.edges()[e].id.as_str()).collect();
        let mut v = json!({
            "bridge": p.is_bridge,
            "edges": ids,
            "graph": crate::graph_file::graph_to_json(&p.graph),
        });
        if genus > 0 {
            let b = admissible_core::admissible::invariant_bundle(&p.graph).map_err(|e| format!("{source}: {e}"))?;
            v["invariants"] = bundle_json(&b);
        }
        list.push(v);
    }
    Ok(json!({"source": source, "genus": genus, "pieces": list}))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Phi,
    Lambda,
    Epsilon,
    Trivial,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Phi => "phi",
            BoundKind::Lambda => "lambda",
            BoundKind::Epsilon => "epsilon",
            BoundKind::Trivial => "trivial",
        }
    }
}

/// Status of one graph in a `check` run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Ok,
    /// A bound fails on a graph where it is not a theorem.
    Flagged,
    /// A bound fails on a graph where it is expected to hold.
    Violation,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Ok => "ok",
            CheckStatus::Flagged => "flagged",
            CheckStatus::Violation => "violation",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// Check one bound on one graph.
///
/// The trivial bounds hold for every graph. The `phi`, `lambda` and
/// `epsilon` bounds with the default constant are only established for
/// elementary graphs, so failures elsewhere are flagged, not counted.
pub fn check_entry<S: FileScalar>(
    index: usize,
    source: &str,
    g: &PolarizedGraph<S>,
    bound: BoundKind,
    c: Option<S>,
) -> Result<(CheckStatus, Value), String> {
    let mut value = json!({
        "index": index,
        "source": source,
        "genus": g.genus(),
        "elementary": g.is_elementary(),
        "two_edge_connected": g.is_two_edge_connected(),
    });
    let skip = |mut value: Value, reason: &str| {
        value["status"] = json!(CheckStatus::Skipped.as_str());
        value["reason"] = json!(reason);
        Ok((CheckStatus::Skipped, value))
    };
    if g.genus() < 2 {
        return skip(value, "genus below 2");
    }
    if bound == BoundKind::Epsilon && !g.is_two_edge_connected() {
        return skip(value, "epsilon bounds need a 2-edge-connected graph");
    }
    let b = Admissible::new(g).map_err(|e| format!("{source}: {e}"))?.bundle();
    let reports: Vec<BoundReport<S>> = match bound {
        BoundKind::Phi => vec![phi_bound(&b, c)],
        BoundKind::Lambda => vec![lambda_bound(&b)],
        BoundKind::Epsilon => epsilon_bounds(&b, c).map(|r| r.to_vec()).into_iter().flatten().map(Ok).collect(),
        BoundKind::Trivial => trivial_bounds(&b).map(|r| r.to_vec()).into_iter().flatten().map(Ok).collect(),
    }
    .into_iter()
    .collect::<Result<_, _>>()
    .map_err(|e| format!("{source}: {e}"))?;
    let expected = bound == BoundKind::Trivial || g.is_elementary();
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fails);
    let status = match (failed, expected) {
        (false, _) => CheckStatus::Ok,
        (true, true) => CheckStatus::Violation,
        (true, false) => CheckStatus::Flagged,
    };
    value["reports"] = Value::Array(reports.iter().map(bound_json).collect());
    value["status"] = json!(status.as_str());
    Ok((status, value))
}

/// CSV row for the float backend.
pub fn csv_record(source: &str, b: &InvariantBundle<f64>) -> Vec<String> {
    vec![
        source.to_string(),
        b.genus.to_string(),
        b.total_length.to_string(),
        b.tau.to_string(),
        b.epsilon.to_string(),
        b.phi.to_string(),
        b.lambda.to_string(),
    ]
}

pub const CSV_HEADER: [&str; 7] = ["source", "genus", "total_length", "tau", "epsilon", "phi", "lambda"];
