//! JSON formats for leaf spaces, flow specs and plane maps.
//!
//! Leaf spaces: `{"vertices":[..],"edges":[{"id":..,"endA":[..],"endB":[..]}]}`.
//! Flow specs: `{"lines":[{"x":-1.0,"dir":1},..],"bands":["invariant",{"transition":{"sign":1}},..]}`,
//! `{"translation":[a,b]}`, or a built-in name such as `reeb` or
//! `translation:1,0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{fixtures, Band, FlowError, FlowSpec, Line, SpecViolation};
use crate::graph::{GraphError, LeafSpaceGraph, Violation};
use crate::maps::{MapError, PlaneMap};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid leaf space: {}", join(.0))]
    InvalidGraph(Vec<Violation>),
    #[error("invalid flow spec: {}", join(.0))]
    InvalidSpec(Vec<SpecViolation>),
    #[error("invalid plane map: {0}")]
    InvalidMap(MapError),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        IoError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

impl From<GraphError> for IoError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Invalid(v) => IoError::InvalidGraph(v),
            GraphError::Internal(m) => IoError::Syntax {
                line: 0,
                column: 0,
                message: m,
            },
        }
    }
}

pub fn parse_leafspace(text: &str) -> Result<LeafSpaceGraph, IoError> {
    let g: LeafSpaceGraph = serde_json::from_str(text)?;
    g.ensure_valid()?;
    Ok(g)
}

/// Compact JSON; `parse_leafspace(serialize_leafspace(g)) == g`.
pub fn serialize_leafspace(g: &LeafSpaceGraph) -> String {
    serde_json::to_string(g).expect("leaf spaces always serialize")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBands {
    lines: Vec<Line>,
    bands: Vec<Band>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTranslation {
    translation: [f64; 2],
}

#[derive(Serialize)]
struct TranslationOut {
    translation: [f64; 2],
}

fn spec_error(e: FlowError) -> IoError {
    match e {
        FlowError::InvalidSpec(v) => IoError::InvalidSpec(v),
        other => IoError::Syntax {
            line: 0,
            column: 0,
            message: other.to_string(),
        },
    }
}

/// Accepts a built-in name (bare or as a JSON string) or a JSON spec.
pub fn parse_flowspec(text: &str) -> Result<FlowSpec, IoError> {
    let trimmed = text.trim();
    if let Some(spec) = fixtures::by_name(trimmed) {
        return Ok(spec);
    }
    let unknown = |name: &str| IoError::Syntax {
        line: 1,
        column: 1,
        message: format!(
            "unknown built-in flow {name:?}; known: {}",
            fixtures::NAMES.join(", ")
        ),
    };
    if !trimmed.starts_with(['{', '"']) {
        return Err(unknown(trimmed));
    }
    let value: serde_json::Value = serde_json::from_str(text)?;
    match &value {
        serde_json::Value::String(name) => fixtures::by_name(name).ok_or_else(|| unknown(name)),
        serde_json::Value::Object(map) if map.contains_key("translation") => {
            let raw: RawTranslation = serde_json::from_str(text)?;
            FlowSpec::translation(raw.translation[0], raw.translation[1]).map_err(spec_error)
        }
        _ => {
            let raw: RawBands = serde_json::from_str(text)?;
            FlowSpec::bands(raw.lines, raw.bands).map_err(spec_error)
        }
    }
}

pub fn serialize_flowspec(spec: &FlowSpec) -> String {
    match spec {
        FlowSpec::Bands(b) => serde_json::to_string(b),
        FlowSpec::Translation(v) => serde_json::to_string(&TranslationOut {
            translation: [v.x, v.y],
        }),
    }
    .expect("flow specs always serialize")
}

pub fn parse_plane_map(text: &str) -> Result<PlaneMap, IoError> {
    let m: PlaneMap = serde_json::from_str(text)?;
    m.validate().map_err(IoError::InvalidMap)?;
    Ok(m)
}

pub fn serialize_plane_map(m: &PlaneMap) -> String {
    serde_json::to_string(m).expect("plane maps always serialize")
}
