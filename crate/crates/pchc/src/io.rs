//! JSON input and output documents.
//!
//! Characteristic data travels as an `InputDocument` with rational
//! coordinates written as `"p/q"` strings (decimals are accepted and
//! converted exactly); skeletons travel as a `SkeletonDocument` wrapping
//! the graph with a schema version. Parse errors carry the position
//! (syntax) or the offending field (semantics).

use crate::characteristic::{CharacteristicData, CharacteristicError, Liaison};
use crate::config::{Configuration, ConfigurationError};
use crate::marked::{
    CirclePoint, IntervalPoint, MarkedCircleSet, MarkedIntervalSet, MarkedSetError,
};
use crate::rational::{format_rational, parse_rational};
use crate::skeleton::SkeletonGraph;
use serde::{Deserialize, Serialize};

pub const INPUT_SCHEMA_VERSION: u32 = 1;
pub const SKELETON_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarkedSetDoc {
    pub points: Vec<String>,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputDocument {
    pub schema_version: u32,
    pub config: String,
    pub l1: MarkedSetDoc,
    pub l2: MarkedSetDoc,
    pub a_plus: MarkedSetDoc,
    pub a_minus: MarkedSetDoc,
    pub liaison: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkeletonDocument {
    pub schema_version: u32,
    #[serde(flatten)]
    pub graph: SkeletonGraph,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum IoError {
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported schema version {found} (expected {expected})")]
    SchemaVersion { found: u32, expected: u32 },
    #[error("{context}: {message}")]
    Semantic { context: &'static str, message: String },
}

fn syntax_error(e: serde_json::Error) -> IoError {
    IoError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

fn semantic<E: std::fmt::Display>(context: &'static str) -> impl Fn(E) -> IoError {
    move |e| IoError::Semantic { context, message: e.to_string() }
}

fn interval_set(doc: &MarkedSetDoc, context: &'static str) -> Result<MarkedIntervalSet, IoError> {
    let points: Result<Vec<IntervalPoint>, IoError> = doc
        .points
        .iter()
        .map(|s| {
            let r = parse_rational(s).map_err(semantic::<_>(context))?;
            IntervalPoint::new(r).map_err(semantic::<_>(context))
        })
        .collect();
    MarkedIntervalSet::new(points?, doc.classes.clone())
        .map_err(semantic::<MarkedSetError>(context))
}

fn circle_set(doc: &MarkedSetDoc, context: &'static str) -> Result<MarkedCircleSet, IoError> {
    let points: Result<Vec<CirclePoint>, IoError> = doc
        .points
        .iter()
        .map(|s| {
            let r = parse_rational(s).map_err(semantic::<_>(context))?;
            CirclePoint::new(r).map_err(semantic::<_>(context))
        })
        .collect();
    MarkedCircleSet::new(points?, doc.classes.clone())
        .map_err(semantic::<MarkedSetError>(context))
}

/// Parse an input document into validated characteristic data.
pub fn parse_input(json: &str) -> Result<CharacteristicData, IoError> {
    let doc: InputDocument = serde_json::from_str(json).map_err(syntax_error)?;
    document_to_data(&doc)
}

pub fn document_to_data(doc: &InputDocument) -> Result<CharacteristicData, IoError> {
    if doc.schema_version != INPUT_SCHEMA_VERSION {
        return Err(IoError::SchemaVersion {
            found: doc.schema_version,
            expected: INPUT_SCHEMA_VERSION,
        });
    }
    let config: Configuration = doc
        .config
        .parse()
        .map_err(semantic::<ConfigurationError>("config"))?;
    let l1 = interval_set(&doc.l1, "l1")?;
    let l2 = interval_set(&doc.l2, "l2")?;
    let a_plus = circle_set(&doc.a_plus, "a_plus")?;
    let a_minus = circle_set(&doc.a_minus, "a_minus")?;
    CharacteristicData::new(config, l1, l2, a_plus, a_minus, Liaison { pairs: doc.liaison.clone() })
        .map_err(semantic::<CharacteristicError>("characteristic data"))
}

/// Render characteristic data as an input document.
pub fn data_to_document(data: &CharacteristicData) -> InputDocument {
    let iset = |s: &MarkedIntervalSet| MarkedSetDoc {
        points: s.points().iter().map(|p| format_rational(p.value())).collect(),
        classes: s.classes().clone(),
    };
    let cset = |s: &MarkedCircleSet| MarkedSetDoc {
        points: s.points().iter().map(|p| format_rational(p.value())).collect(),
        classes: s.classes().clone(),
    };
    InputDocument {
        schema_version: INPUT_SCHEMA_VERSION,
        config: data.config.word(),
        l1: iset(&data.l1),
        l2: iset(&data.l2),
        a_plus: cset(&data.a_plus),
        a_minus: cset(&data.a_minus),
        liaison: data.liaison.pairs.clone(),
    }
}

pub fn input_to_json(doc: &InputDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

/// Parse a skeleton document.
pub fn parse_skeleton(json: &str) -> Result<SkeletonGraph, IoError> {
    let doc: SkeletonDocument = serde_json::from_str(json).map_err(syntax_error)?;
    if doc.schema_version != SKELETON_SCHEMA_VERSION {
        return Err(IoError::SchemaVersion {
            found: doc.schema_version,
            expected: SKELETON_SCHEMA_VERSION,
        });
    }
    Ok(doc.graph)
}

pub fn skeleton_to_json(graph: &SkeletonGraph) -> String {
    let doc =
        SkeletonDocument { schema_version: SKELETON_SCHEMA_VERSION, graph: graph.clone() };
    let mut s = serde_json::to_string_pretty(&doc).expect("skeleton serializes");
    s.push('\n');
    s
}
