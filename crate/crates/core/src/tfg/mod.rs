//! Topological full groups of SFT groupoids as prefix-exchange tables.
//!
//! A word `x_1 x_2 … x_n` lists edge ids with the target of `x_{k+1}` equal
//! to the source of `x_k`. A table pair `(c, u) → (c', v)` sends
//! `(c, u x)` to `(c', v x)`. Copy indices realize the amplification
//! `R × G`; tables on copy 1 alone are elements of the plain full group.

mod cylinders;
mod graph;
mod table;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{GroupoidSpec, ModelError};

pub use cylinders::{CylinderSet, Piece};
pub use graph::{format_word, parse_word, SftGraph, Word};
pub use table::{validate, Diagnostic, DiagnosticKind, Order, Pair, PrefixTable, Side};

pub const DEFAULT_DEPTH_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TfgError {
    #[error("full-group arithmetic needs an irreducible, non-permutation graph: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Model(ModelError),
    #[error("word `{word}`: {reason}")]
    BadWord { word: String, reason: String },
    #[error("invalid table: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("tables live on different graphs")]
    GraphMismatch,
    #[error("supports differ: copies {left:?} and {right:?}")]
    SupportMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("support {support:?} is not contained in {target:?}")]
    NotContained { support: Vec<u32>, target: Vec<u32> },
    #[error("result needs words of length {len}, over the depth cap {cap}")]
    DepthExceeded { cap: usize, len: usize },
    #[error("{0}")]
    Parse(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    #[serde(default = "one")]
    cu: u32,
    u: String,
    #[serde(default = "one")]
    cv: u32,
    v: String,
}

fn one() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    graph: serde_json::Value,
    pairs: Vec<PairDoc>,
}

/// Reads the `graph` field of an element or cylinder document: an SFT
/// spec, with `"type"` optional.
pub fn graph_from_value(mut value: serde_json::Value) -> Result<Arc<SftGraph>, TfgError> {
    if let serde_json::Value::Object(m) = &mut value {
        m.entry("type").or_insert_with(|| "sft".into());
    }
    match crate::models::parse_value(value).map_err(|e| TfgError::Model(e.under("graph")))? {
        GroupoidSpec::Sft(s) => Ok(Arc::new(SftGraph::new(s)?)),
        other => Err(TfgError::Parse(format!("graph must be an sft spec, found `{}`", other.kind()))),
    }
}

fn graph_value(g: &SftGraph) -> serde_json::Value {
    crate::models::to_json(&GroupoidSpec::Sft(g.spec().clone()))
}

/// Graph and raw pairs of an element document, before validation.
pub fn table_parts_from_json_value(value: serde_json::Value) -> Result<(Arc<SftGraph>, Vec<Pair>), TfgError> {
    let doc: TableDoc = serde_path_to_error::deserialize(value)
        .map_err(|e| TfgError::Parse(format!("{}: {}", e.path(), e.inner())))?;
    let graph = graph_from_value(doc.graph)?;
    let pairs = doc
        .pairs
        .into_iter()
        .map(|p| Ok(Pair::new(p.cu, parse_word(&p.u)?, p.cv, parse_word(&p.v)?)))
        .collect::<Result<Vec<_>, TfgError>>()?;
    Ok((graph, pairs))
}

/// `{"graph": {...}, "pairs": [{"cu":1,"u":"e0 e1","cv":1,"v":"e1"}, …]}`.
pub fn table_from_json_value(value: serde_json::Value, depth_cap: usize) -> Result<PrefixTable, TfgError> {
    let (graph, pairs) = table_parts_from_json_value(value)?;
    PrefixTable::with_cap(graph, pairs, depth_cap)
}

pub fn parse_json_text(text: &str) -> Result<serde_json::Value, TfgError> {
    serde_json::from_str(text).map_err(|e| TfgError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn table_from_json(text: &str, depth_cap: usize) -> Result<PrefixTable, TfgError> {
    table_from_json_value(parse_json_text(text)?, depth_cap)
}

pub fn table_to_json(t: &PrefixTable) -> serde_json::Value {
    let doc = TableDoc {
        graph: graph_value(t.graph()),
        pairs: t
            .pairs()
            .iter()
            .map(|p| PairDoc {
                cu: p.cu,
                u: format_word(&p.u),
                cv: p.cv,
                v: format_word(&p.v),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("table serializes")
}
