use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use super::report::header;
use super::{read_file, CliError, Output, TfgCommand, EXIT_INPUT};
use crate::tfg::{
    graph_from_value, parse_json_text, parse_word, table_parts_from_json_value, table_to_json, validate, Order,
    PrefixTable, SftGraph, TfgError, Word,
};

fn load(path: &Path, cap: usize) -> Result<PrefixTable, CliError> {
    let value = parse_json_text(&read_file(path)?).map_err(|e| in_file(path, e))?;
    let (graph, pairs) = table_parts_from_json_value(value).map_err(|e| in_file(path, e))?;
    PrefixTable::with_cap(graph, pairs, cap).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: TfgError) -> CliError {
    let mut c = CliError::from(e);
    c.message = format!("{}: {}", path.display(), c.message);
    c
}

fn element(t: &PrefixTable) -> Value {
    json!({
        "element": table_to_json(t),
        "compact": t.to_string(),
        "pairs": t.len(),
        "support": t.support(),
        "depth": t.depth(),
        "identity": t.is_identity(),
    })
}

fn element_output(command: &str, t: &PrefixTable) -> Output {
    let mut m = header(command);
    m.insert("result".into(), element(t));
    Output {
        json: Value::Object(m),
        text: t.to_string(),
    }
}

/// A cylinder word: compact digits such as `01`, or edge ids such as `e0 e1`.
fn cylinder_word(g: &SftGraph, s: &str) -> Result<Word, CliError> {
    let s = s.trim();
    let w = if s.is_empty() || s == "ε" {
        Vec::new()
    } else if s.contains(char::is_whitespace) || s.contains('e') {
        parse_word(s)?
    } else if g.compact_ids() {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| CliError::input(format!("bad cylinder `{s}`"))))
            .collect::<Result<Word, _>>()?
    } else {
        parse_word(s)?
    };
    g.check_word(&w)
        .map_err(|reason| CliError::input(format!("cylinder `{s}`: {reason}")))?;
    Ok(w)
}

fn graph_file(path: &Path) -> Result<Arc<SftGraph>, CliError> {
    let mut value = parse_json_text(&read_file(path)?).map_err(|e| in_file(path, e))?;
    if let Some(g) = value.get_mut("graph") {
        value = g.take();
    }
    graph_from_value(value).map_err(|e| in_file(path, e))
}

pub(crate) fn run(op: &TfgCommand, cap: usize) -> Result<Output, CliError> {
    match op {
        TfgCommand::Compose { files } => {
            let tables = files.iter().map(|f| load(f, cap)).collect::<Result<Vec<_>, _>>()?;
            let mut acc = tables.last().expect("at least two files").clone();
            for t in tables.iter().rev().skip(1) {
                acc = t.compose_capped(&acc, cap)?;
            }
            Ok(element_output("tfg compose", &acc))
        }
        TfgCommand::Inverse { file } => Ok(element_output("tfg inverse", &load(file, cap)?.inverse())),
        TfgCommand::Canon { file } => Ok(element_output("tfg canon", &load(file, cap)?.canonicalize())),
        TfgCommand::Commutator { left, right } => {
            let c = load(left, cap)?.commutator(&load(right, cap)?)?;
            Ok(element_output("tfg commutator", &c))
        }
        TfgCommand::Equals { left, right } => {
            let (a, b) = (load(left, cap)?, load(right, cap)?);
            if !Arc::ptr_eq(a.graph(), b.graph()) && a.graph().spec() != b.graph().spec() {
                return Err(TfgError::GraphMismatch.into());
            }
            let eq = a.equals(&b);
            let mut m = header("tfg equals");
            m.insert("equal".into(), json!(eq));
            m.insert("left".into(), json!(a.canonicalize().to_string()));
            m.insert("right".into(), json!(b.canonicalize().to_string()));
            Ok(Output {
                json: Value::Object(m),
                text: if eq { "equal".into() } else { "not equal".into() },
            })
        }
        TfgCommand::Order { file, cap: order_cap } => {
            let t = load(file, cap)?;
            let o = t.order(*order_cap)?;
            let text = match o {
                Order::Finite { order } => order.to_string(),
                Order::ExceedsCap { cap } => format!("order exceeds {cap}"),
                Order::DepthExceeded { power } => format!("power {power} exceeds the depth cap"),
            };
            let mut m = header("tfg order");
            m.insert("element".into(), json!(t.canonicalize().to_string()));
            m.insert("order".into(), serde_json::to_value(o).expect("order serializes"));
            Ok(Output {
                json: Value::Object(m),
                text,
            })
        }
        TfgCommand::Verify { file } => {
            let value = parse_json_text(&read_file(file)?).map_err(|e| in_file(file, e))?;
            let (graph, pairs) = table_parts_from_json_value(value).map_err(|e| in_file(file, e))?;
            let diagnostics = validate(&graph, &pairs, cap);
            let valid = diagnostics.is_empty();
            let mut m = header("tfg verify");
            m.insert("valid".into(), json!(valid));
            m.insert("diagnostics".into(), serde_json::to_value(&diagnostics).expect("diagnostics serialize"));
            let mut text = String::new();
            if valid {
                let t = PrefixTable::with_cap(graph, pairs, cap)?;
                m.insert("canonical".into(), json!(t.canonicalize().to_string()));
                let _ = write!(text, "valid: {}", t.canonicalize());
            } else {
                let _ = writeln!(text, "invalid");
                for d in &diagnostics {
                    let _ = writeln!(text, "  {} at {}: {}", kind_name(d), d.witness, d.message);
                }
            }
            m.insert("summary".into(), json!(text.trim_end()));
            let json = Value::Object(m);
            if valid {
                Ok(Output { json, text })
            } else {
                Err(CliError {
                    code: EXIT_INPUT,
                    message: format!("{}: invalid table ({} defects)", file.display(), diagnostics.len()),
                    report: Some(json),
                })
            }
        }
        TfgCommand::Zeta { graph, cylinders } => {
            let g = graph_file(graph)?;
            if cylinders.is_empty() {
                return Err(CliError::input("zeta needs at least one --cylinder"));
            }
            let words = cylinders.iter().map(|c| cylinder_word(&g, c)).collect::<Result<Vec<_>, _>>()?;
            let z = PrefixTable::zeta_witness(g, &words)?;
            Ok(element_output("tfg zeta", &z))
        }
        TfgCommand::Embed { file, copies } => {
            let t = load(file, cap)?;
            let copies: BTreeSet<u32> = copies.iter().copied().collect();
            Ok(element_output("tfg embed", &t.corner_embed(&copies)?))
        }
    }
}

fn kind_name(d: &crate::tfg::Diagnostic) -> String {
    serde_json::to_value(d.kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}
