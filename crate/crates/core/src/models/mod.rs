//! Validated descriptions of the groupoid classes the library computes
//! with, and their JSON/TOML document schema.

mod finite;
mod hypotheses;
mod specs;

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::IntMatrix;
use crate::bigjson::JsonInt;
use crate::graded::GradedAbGroup;

pub use finite::{ArrowSpec, FiniteGroupoid};
pub use hypotheses::{check_hypotheses, Hypothesis, HypothesisKind, HypothesisReport};
pub use specs::{BratteliSpec, Edge, KGraphSpec, KepSpec, SftSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("{path}: {message}{}", location(*.line, *.column))]
    Schema {
        path: String,
        message: String,
        line: Option<usize>,
        column: Option<usize>,
    },
    #[error("{path}: {message}")]
    Invariant { path: String, message: String },
    #[error("groupoid axiom violated: {0}")]
    Axiom(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" (line {l}, column {c})"),
        (Some(l), None) => format!(" (line {l})"),
        _ => String::new(),
    }
}

impl ModelError {
    pub(crate) fn invariant(path: impl Into<String>, message: impl Into<String>) -> Self {
        ModelError::Invariant {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn axiom(message: impl Into<String>) -> Self {
        ModelError::Axiom(message.into())
    }

    /// Prefixes the field path, so nested errors read `factors[1].B[0][0]`.
    pub(crate) fn under(self, prefix: &str) -> Self {
        let join = |p: String| if p.is_empty() || p == "." { prefix.to_string() } else { format!("{prefix}.{p}") };
        match self {
            ModelError::Invariant { path, message } => ModelError::Invariant {
                path: join(path),
                message,
            },
            ModelError::Axiom(m) => ModelError::Invariant {
                path: prefix.to_string(),
                message: format!("groupoid axiom violated: {m}"),
            },
            ModelError::NotAGroup(m) => ModelError::Invariant {
                path: prefix.to_string(),
                message: format!("not a group: {m}"),
            },
            other => other,
        }
    }
}

/// Any groupoid the library knows how to compute homology for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupoidSpec {
    Sft(SftSpec),
    KGraph(KGraphSpec),
    Kep(KepSpec),
    Finite(FiniteGroupoid),
    Bratteli(BratteliSpec),
    Product(Vec<GroupoidSpec>),
    /// Homology supplied directly, for classes without a built-in formula.
    DirectHomology(GradedAbGroup),
}

impl GroupoidSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            GroupoidSpec::Sft(_) => "sft",
            GroupoidSpec::KGraph(_) => "kgraph",
            GroupoidSpec::Kep(_) => "kep",
            GroupoidSpec::Finite(_) => "finite",
            GroupoidSpec::Bratteli(_) => "bratteli",
            GroupoidSpec::Product(_) => "product",
            GroupoidSpec::DirectHomology(_) => "graded",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Toml,
}

impl Format {
    /// `.toml` files are TOML, everything else is read as JSON.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("toml") => Format::Toml,
            _ => Format::Json,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SftDoc {
    #[serde(rename = "type")]
    kind: String,
    matrix: IntMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KGraphDoc {
    #[serde(rename = "type")]
    kind: String,
    edge_counts: Vec<JsonInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KepDoc {
    #[serde(rename = "type")]
    kind: String,
    #[serde(rename = "A")]
    a: IntMatrix,
    #[serde(rename = "B")]
    b: IntMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiniteDoc {
    #[serde(rename = "type")]
    kind: String,
    units: usize,
    arrows: Vec<ArrowDoc>,
    compose: Vec<[u64; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    id: u64,
    src: usize,
    tgt: usize,
    inv: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BratteliDoc {
    #[serde(rename = "type")]
    kind: String,
    incidence: Vec<IntMatrix>,
    #[serde(default)]
    stationary: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductDoc {
    #[serde(rename = "type")]
    #[allow(dead_code)]
    kind: String,
    factors: Vec<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradedDoc {
    #[serde(rename = "type")]
    kind: String,
    homology: GradedAbGroup,
}

fn join_path(prefix: &str, path: &str) -> String {
    match (prefix.is_empty(), path.is_empty() || path == ".") {
        (true, true) => "<root>".to_string(),
        (true, false) => path.to_string(),
        (false, true) => prefix.to_string(),
        (false, false) if path.starts_with('[') => format!("{prefix}{path}"),
        (false, false) => format!("{prefix}.{path}"),
    }
}

fn typed<T: serde::de::DeserializeOwned>(value: serde_json::Value, prefix: &str) -> Result<T, ModelError> {
    serde_path_to_error::deserialize(value).map_err(|e| ModelError::Schema {
        path: join_path(prefix, &e.path().to_string()),
        message: e.inner().to_string(),
        line: None,
        column: None,
    })
}

fn from_value(value: serde_json::Value, prefix: &str) -> Result<GroupoidSpec, ModelError> {
    let kind = match value.get("type") {
        Some(serde_json::Value::String(s)) => s.clone(),
        _ => {
            return Err(ModelError::Schema {
                path: join_path(prefix, "type"),
                message: "missing or non-string \"type\" field".into(),
                line: None,
                column: None,
            })
        }
    };
    let spec = match kind.as_str() {
        "sft" => {
            let d: SftDoc = typed(value, prefix)?;
            SftSpec::new(d.matrix).map(GroupoidSpec::Sft)
        }
        "kgraph" => {
            let d: KGraphDoc = typed(value, prefix)?;
            KGraphSpec::new(d.edge_counts.into_iter().map(|c| c.0).collect()).map(GroupoidSpec::KGraph)
        }
        "kep" => {
            let d: KepDoc = typed(value, prefix)?;
            KepSpec::new(d.a, d.b).map(GroupoidSpec::Kep)
        }
        "finite" => {
            let d: FiniteDoc = typed(value, prefix)?;
            finite_from_doc(d)
        }
        "bratteli" => {
            let d: BratteliDoc = typed(value, prefix)?;
            BratteliSpec::new(d.incidence, d.stationary).map(GroupoidSpec::Bratteli)
        }
        "product" => {
            let d: ProductDoc = typed(value, prefix)?;
            if d.factors.is_empty() {
                Err(ModelError::invariant("factors", "a product needs at least one factor"))
            } else {
                let mut out = Vec::with_capacity(d.factors.len());
                for (i, f) in d.factors.into_iter().enumerate() {
                    out.push(from_value(f, &join_path(prefix, &format!("factors[{i}]")))?);
                }
                return Ok(GroupoidSpec::Product(out));
            }
        }
        "graded" => {
            let d: GradedDoc = typed(value, prefix)?;
            Ok(GroupoidSpec::DirectHomology(d.homology))
        }
        other => {
            return Err(ModelError::Schema {
                path: join_path(prefix, "type"),
                message: format!(
                    "unknown groupoid type {other:?}; expected one of sft, kgraph, kep, finite, bratteli, product, graded"
                ),
                line: None,
                column: None,
            })
        }
    };
    spec.map_err(|e| if prefix.is_empty() { e } else { e.under(prefix) })
}

fn finite_from_doc(d: FiniteDoc) -> Result<GroupoidSpec, ModelError> {
    let labels: Vec<u64> = d.arrows.iter().map(|a| a.id).collect();
    let index = finite::index_labels(&labels)?;
    let lookup = |id: u64, what: &str| {
        index
            .get(&id)
            .copied()
            .ok_or_else(|| ModelError::invariant(what.to_string(), format!("unknown arrow id {id}")))
    };
    let mut specs = Vec::with_capacity(d.arrows.len());
    for (i, a) in d.arrows.iter().enumerate() {
        specs.push(ArrowSpec {
            source: a.src,
            range: a.tgt,
            inverse: lookup(a.inv, &format!("arrows[{i}].inv"))?,
        });
    }
    let mut products = Vec::with_capacity(d.compose.len());
    for (i, [g, h, gh]) in d.compose.iter().enumerate() {
        let path = format!("compose[{i}]");
        products.push((lookup(*g, &path)?, lookup(*h, &path)?, lookup(*gh, &path)?));
    }
    FiniteGroupoid::with_labels(d.units, &specs, &products, labels).map(GroupoidSpec::Finite)
}

/// Canonical JSON value of a spec; [`parse_spec`] inverts it.
pub fn to_json(spec: &GroupoidSpec) -> serde_json::Value {
    let kind = spec.kind().to_string();
    let v = match spec {
        GroupoidSpec::Sft(s) => serde_json::to_value(SftDoc {
            kind,
            matrix: s.matrix().clone(),
        }),
        GroupoidSpec::KGraph(k) => serde_json::to_value(KGraphDoc {
            kind,
            edge_counts: k.edge_counts().iter().cloned().map(JsonInt).collect(),
        }),
        GroupoidSpec::Kep(k) => serde_json::to_value(KepDoc {
            kind,
            a: k.a().clone(),
            b: k.b().clone(),
        }),
        GroupoidSpec::Finite(g) => {
            let arrows = (0..g.arrow_count())
                .map(|i| ArrowDoc {
                    id: g.label(i),
                    src: g.source(i),
                    tgt: g.range(i),
                    inv: g.label(g.inverse(i)),
                })
                .collect();
            let compose = g
                .products()
                .into_iter()
                .map(|(a, b, c)| [g.label(a), g.label(b), g.label(c)])
                .collect();
            serde_json::to_value(FiniteDoc {
                kind,
                units: g.unit_count(),
                arrows,
                compose,
            })
        }
        GroupoidSpec::Bratteli(b) => serde_json::to_value(BratteliDoc {
            kind,
            incidence: b.incidence().to_vec(),
            stationary: b.is_stationary(),
        }),
        GroupoidSpec::Product(fs) => Ok(serde_json::json!({
            "type": kind,
            "factors": fs.iter().map(to_json).collect::<Vec<_>>(),
        })),
        GroupoidSpec::DirectHomology(h) => serde_json::to_value(GradedDoc {
            kind,
            homology: h.clone(),
        }),
    };
    v.expect("spec serializes")
}

/// Validates an already parsed JSON value.
pub fn parse_value(value: serde_json::Value) -> Result<GroupoidSpec, ModelError> {
    from_value(value, "")
}

pub fn serialize_spec(spec: &GroupoidSpec) -> String {
    to_json(spec).to_string()
}

/// Parses and validates a groupoid document.
pub fn parse_spec(text: &str, format: Format) -> Result<GroupoidSpec, ModelError> {
    let value: serde_json::Value = match format {
        Format::Json => serde_json::from_str(text).map_err(|e| ModelError::Schema {
            path: "<document>".into(),
            message: strip_location(&e.to_string()),
            line: Some(e.line()),
            column: Some(e.column()),
        })?,
        Format::Toml => toml::from_str(text).map_err(|e| {
            let line = e.span().map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
            ModelError::Schema {
                path: "<document>".into(),
                message: e.message().to_string(),
                line,
                column: None,
            }
        })?,
    };
    from_value(value, "")
}

fn strip_location(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn parse_spec_file(path: &Path) -> Result<GroupoidSpec, SpecFileError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecFileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_spec(&text, Format::from_path(path)).map_err(|source| SpecFileError::Model {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Model { path: String, source: ModelError },
}
