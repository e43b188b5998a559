//! Places files: `{"places": [{"kind": "real|complex|nonarch", "g": int, "e": int, "tau": 1|-1}]}`.

use admissible_core::root_numbers::{
    archimedean_disagreement, global_epsilon, local_epsilon, LocalPlaceData, PlaceKind,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::graph_file::{read_source, ParseError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlacesFile {
    places: Vec<PlaceEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaceEntry {
    kind: String,
    g: u64,
    #[serde(default)]
    e: u64,
    #[serde(default = "plus_one")]
    tau: i64,
}

fn plus_one() -> i64 {
    1
}

#[derive(Debug, thiserror::Error)]
pub enum PlacesError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{source_name}: place {index}: {message}")]
    Place {
        source_name: String,
        index: usize,
        message: String,
    },
}

pub fn places_from_str(source_name: &str, text: &str) -> Result<Vec<LocalPlaceData>, PlacesError> {
    let file: PlacesFile = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        source_name: source_name.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.places
        .iter()
        .enumerate()
        .map(|(index, p)| {
            let err = |message: String| PlacesError::Place {
                source_name: source_name.to_string(),
                index,
                message,
            };
            match p.kind.as_str() {
                "real" => LocalPlaceData::real(p.g),
                "complex" => LocalPlaceData::complex(p.g),
                "nonarch" => LocalPlaceData::nonarchimedean(p.g, p.e, p.tau),
                other => return Err(err(format!("unknown kind `{other}`"))),
            }
            .map_err(|e| err(e.to_string()))
        })
        .collect()
}

pub fn load_places(path: &str) -> Result<Vec<LocalPlaceData>, PlacesError> {
    let text = read_source(path)?;
    places_from_str(path, &text)
}

fn kind_json(p: &LocalPlaceData) -> Value {
    match p.kind {
        PlaceKind::Real => json!({"kind": "real", "g": p.genus}),
        PlaceKind::Complex => json!({"kind": "complex", "g": p.genus}),
        PlaceKind::NonArchimedean { toric_rank, det } => {
            json!({"kind": "nonarch", "g": p.genus, "e": toric_rank, "tau": det})
        }
    }
}

/// Report body for the `epsilon` command.
pub fn epsilon_report(places: &[LocalPlaceData]) -> Result<Value, String> {
    let global = global_epsilon(places).map_err(|e| e.to_string())?;
    let locals: Vec<Value> = places
        .iter()
        .map(|p| {
            let mut v = kind_json(p);
            v["sign"] = json!(local_epsilon(p));
            if let Some(d) = archimedean_disagreement(p.kind, p.genus) {
                v["hodge_expression_disagrees"] = json!(d);
            }
            v
        })
        .collect();
    Ok(json!({"global": global, "locals": locals}))
}
