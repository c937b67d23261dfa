use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::{load_spec, CliError, Context, InvariantsArgs, Output, TOOL_NAME, TOOL_VERSION};
use crate::bigjson::JsonInt;
use crate::graded::{poincare_derived, poincare_full, rationalize, GradedAbGroup, GradedDims};
use crate::homology::{af_homology, compute, AfLimit, Engine};
use crate::invariants::{
    ah_resolve, amplified_note, rational_derived, rational_full, series_exact_through, vanishing_report, AhVerdict,
    Declarations, LowestDegree,
};
use crate::models::{check_hypotheses, to_json, GroupoidSpec};

const DEFAULT_SERIES: usize = 8;

pub(crate) fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!({ "name": TOOL_NAME, "version": TOOL_VERSION }));
    m.insert("command".into(), json!(command));
    m
}

struct Base {
    json: Map<String, Value>,
    text: String,
    homology: Option<GradedAbGroup>,
}

fn vanishing_note(spec: &GroupoidSpec, h: &GradedAbGroup) -> Option<String> {
    let GroupoidSpec::Sft(s) = spec else { return None };
    if !h.is_all_trivial() || h.known_through().is_some() {
        return None;
    }
    let m = s.matrix();
    if m.rows() == 1 {
        Some(format!("homology of G_{} vanishes", m[(0, 0)]))
    } else {
        Some(format!("homology of G_A vanishes for A = {m}"))
    }
}

/// Fields shared by every report on a spec: input echo, hypotheses,
/// engine and homology.
fn base(ctx: &Context, command: &str, path: &Path, level: usize) -> Result<Base, CliError> {
    let spec = load_spec(path)?;
    let hyp = check_hypotheses(&spec);
    let mut warnings = hyp.warnings();
    let mut notes = Vec::new();
    let mut json = header(command);
    json.insert("input".into(), to_json(&spec));
    let mut text = String::new();
    let _ = writeln!(text, "{} groupoid", spec.kind());

    let (homology, engine) = if let GroupoidSpec::Bratteli(b) = &spec {
        let af = af_homology(b, level)?;
        let _ = writeln!(text, "level {level}: H0 = Z^{}", af.stage.get(0).rank());
        match &af.limit {
            AfLimit::FinitelyGenerated { rank } => notes.push(format!("H_0 is the limit Z^{rank}; higher homology vanishes")),
            AfLimit::NotFinitelyGenerated { rational_rank, .. } => warnings.push(format!(
                "H_0 is not finitely generated (rational rank {rational_rank}); only the stage is reported"
            )),
            AfLimit::PrefixOnly => warnings.push("only a finite prefix is stored; the limit is not determined".into()),
        }
        let h = af.homology();
        json.insert("af".into(), serde_json::to_value(&af).expect("af report serializes"));
        (h, Engine::Formula)
    } else {
        let c = compute(&spec, &ctx.homology)?;
        (Some(c.homology), c.engine)
    };
    if let Some(h) = &homology {
        if let Some(t) = h.known_through() {
            warnings.push(format!("homology is only known through degree {t}"));
        }
        notes.extend(vanishing_note(&spec, h));
        let _ = writeln!(text, "homology: {h}");
    }
    let _ = writeln!(text, "engine: {}", engine.as_str());
    json.insert("engine".into(), json!(engine));
    json.insert("homology".into(), serde_json::to_value(&homology).expect("homology serializes"));
    json.insert("hypotheses".into(), serde_json::to_value(&hyp).expect("hypotheses serialize"));
    for w in &warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    for n in &notes {
        let _ = writeln!(text, "note: {n}");
    }
    json.insert("warnings".into(), json!(warnings));
    json.insert("notes".into(), json!(notes));
    Ok(Base { json, text, homology })
}

pub(crate) fn homology(ctx: &Context, path: &Path, level: usize) -> Result<Output, CliError> {
    let b = base(ctx, "homology", path, level)?;
    Ok(Output {
        json: Value::Object(b.json),
        text: b.text,
    })
}

fn ints(v: &[num_bigint::BigInt]) -> Value {
    json!(v.iter().cloned().map(JsonInt).collect::<Vec<_>>())
}

fn plain(v: &[num_bigint::BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// `(1 + t)^5 (1 - t^2)^-1` style product for the series of `d`, from
/// degree `from` on.
fn product_formula(d: &GradedDims, from: usize) -> String {
    let mut factors = Vec::new();
    for (j, c) in d.iter() {
        if j < from || j == 0 {
            continue;
        }
        let t = if j == 1 { "t".to_string() } else { format!("t^{j}") };
        let (base, exp) = if j % 2 == 1 {
            (format!("(1 + {t})"), c.to_string())
        } else {
            (format!("(1 - {t})"), format!("-{c}"))
        };
        factors.push(if exp == "1" { base } else { format!("{base}^{exp}") });
    }
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join(" ")
    }
}

pub(crate) fn invariants(ctx: &Context, args: &InvariantsArgs) -> Result<Output, CliError> {
    let declared = if args.declare.is_empty() {
        Declarations::default()
    } else {
        Declarations::parse_list(&args.declare.join(",")).map_err(CliError::input)?
    };
    let everything = args.series.is_none() && !args.ah && !args.vanishing && !args.derived;
    let b = base(ctx, "invariants", &args.spec, 0)?;
    let (mut json, mut text) = (b.json, b.text);
    let Some(h) = b.homology else {
        return Err(CliError::refused("invariants need finitely generated homology"));
    };
    let n = args.series.unwrap_or(DEFAULT_SERIES);
    let exact = series_exact_through(&h, n);
    let mut warnings: Vec<Value> = json["warnings"].as_array().cloned().unwrap_or_default();

    let full = rational_full(&h, n).dense(n);
    let mut rational = Map::new();
    rational.insert("through".into(), json!(n));
    rational.insert("exact_through".into(), json!(exact));
    rational.insert("full".into(), ints(&full));
    let _ = writeln!(text, "dim H_j(F(G), Q), j = 0..{n}: {}", plain(&full));
    if args.derived || everything {
        let derived = rational_derived(&h, n).dense(n);
        let _ = writeln!(text, "dim H_j(D(G), Q), j = 0..{n}: {}", plain(&derived));
        rational.insert("derived".into(), ints(&derived));
        rational.insert("h1_derived".into(), json!("H_1(D(G)) = 0"));
        let _ = writeln!(text, "H_1(D(G)) = 0");
    }
    json.insert("rational".into(), Value::Object(rational));

    if args.series.is_some() || everything {
        let d = rationalize(&h);
        let f = poincare_full(&d, n);
        let dd = poincare_derived(&d, n);
        let f_coeffs = f.coeffs().to_vec();
        let d_coeffs = dd.coeffs().to_vec();
        if f_coeffs != full {
            warnings.push(json!("Poincaré series and rational dimensions disagree"));
        }
        if exact < n {
            warnings.push(json!(format!("series coefficients past degree {exact} depend on unknown homology")));
        }
        let (ff, df) = (product_formula(&d, 1), product_formula(&d, 2));
        let _ = writeln!(text, "P_F(t) = {ff}: {}", plain(&f_coeffs));
        let _ = writeln!(text, "P_D(t) = {df}: {}", plain(&d_coeffs));
        json.insert(
            "series".into(),
            json!({
                "through": n,
                "exact_through": exact,
                "full": { "formula": ff, "coefficients": ints(&f_coeffs) },
                "derived": { "formula": df, "coefficients": ints(&d_coeffs) },
            }),
        );
    }

    if args.vanishing || everything {
        let v = vanishing_report(&h);
        let k = match v.k {
            LowestDegree::Exact(n) => n.to_string(),
            LowestDegree::Infinite => "infinity".into(),
            LowestDegree::AtLeast(n) => format!(">= {n}"),
        };
        let mut summary = Vec::new();
        if v.integrally_acyclic {
            summary.push("integrally acyclic".to_string());
        }
        if v.full_equals_derived {
            summary.push("F = D".to_string());
        }
        let _ = writeln!(text, "k = {k}{}{}", if summary.is_empty() { "" } else { ": " }, summary.join("; "));
        for c in &v.conclusions {
            let _ = writeln!(text, "  {}", c.statement);
        }
        let mut vj = serde_json::to_value(&v).expect("verdict serializes");
        vj["summary"] = json!(summary.join("; "));
        json.insert("vanishing".into(), vj);
    }

    if args.ah || everything {
        let res = ah_resolve(&h);
        let note = amplified_note(&res, &declared);
        let _ = writeln!(text, "{}", res.summary);
        match &res.verdict {
            AhVerdict::Determined { h1_full } => {
                let _ = writeln!(text, "H_1({}) = {h1_full}", note.applies_to);
            }
            AhVerdict::ExtensionAmbiguous { .. } => {}
            AhVerdict::ConnectingMapUnknown { image_dim_min, image_dim_max, .. } => {
                let _ = writeln!(text, "image of zeta has Z/2-dimension between {image_dim_min} and {image_dim_max}");
            }
        }
        let _ = writeln!(text, "strong AH: {}", serde_json::to_value(res.strong_ah).expect("enum").as_str().unwrap_or(""));
        let _ = writeln!(text, "{}", note.note);
        let mut aj = serde_json::to_value(&res).expect("resolution serializes");
        aj["amplified"] = serde_json::to_value(&note).expect("note serializes");
        json.insert("ah".into(), aj);
    }
    for w in warnings.iter().skip(json["warnings"].as_array().map_or(0, Vec::len)) {
        let _ = writeln!(text, "warning: {}", w.as_str().unwrap_or_default());
    }
    json.insert("warnings".into(), Value::Array(warnings));
    Ok(Output {
        json: Value::Object(json),
        text,
    })
}
