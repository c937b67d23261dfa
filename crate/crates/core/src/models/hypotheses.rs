use serde::Serialize;

use super::GroupoidSpec;
use crate::models::specs::{is_irreducible, is_permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisKind {
    Irreducible,
    NotPermutation,
    EdgeCountsAtLeastTwo,
    ZeroPatternMatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    /// Where in the spec the hypothesis applies (`""` for the root).
    pub path: String,
    pub kind: HypothesisKind,
    pub holds: bool,
    pub detail: String,
}

/// Which standing hypotheses of the homology formulas hold for a spec.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HypothesisReport {
    pub items: Vec<Hypothesis>,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|h| h.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Hypothesis> {
        self.items.iter().filter(|h| !h.holds)
    }

    /// One line per failed hypothesis.
    pub fn warnings(&self) -> Vec<String> {
        self.failures()
            .map(|h| {
                if h.path.is_empty() {
                    h.detail.clone()
                } else {
                    format!("{}: {}", h.path, h.detail)
                }
            })
            .collect()
    }
}

fn push(report: &mut HypothesisReport, path: &str, kind: HypothesisKind, holds: bool, yes: &str, no: &str) {
    report.items.push(Hypothesis {
        path: path.to_string(),
        kind,
        holds,
        detail: if holds { yes.to_string() } else { no.to_string() },
    });
}

fn walk(spec: &GroupoidSpec, path: &str, report: &mut HypothesisReport) {
    match spec {
        GroupoidSpec::Sft(s) => {
            push(
                report,
                path,
                HypothesisKind::Irreducible,
                s.is_irreducible(),
                "adjacency matrix is irreducible",
                "adjacency matrix is reducible",
            );
            push(
                report,
                path,
                HypothesisKind::NotPermutation,
                !s.is_permutation(),
                "adjacency matrix is not a permutation matrix",
                "adjacency matrix is a permutation matrix",
            );
        }
        GroupoidSpec::KGraph(k) => {
            // Enforced at construction; reported for completeness.
            push(
                report,
                path,
                HypothesisKind::EdgeCountsAtLeastTwo,
                k.n_values().iter().all(|n| n >= &1.into()),
                "all N_i >= 1",
                "some N_i < 1",
            );
        }
        GroupoidSpec::Kep(k) => {
            push(
                report,
                path,
                HypothesisKind::ZeroPatternMatch,
                true,
                "B(i,j) = 0 exactly where A(i,j) = 0",
                "zero patterns of A and B differ",
            );
            push(
                report,
                path,
                HypothesisKind::Irreducible,
                is_irreducible(k.a()),
                "A is irreducible",
                "A is reducible",
            );
            push(
                report,
                path,
                HypothesisKind::NotPermutation,
                !is_permutation(k.a()),
                "A is not a permutation matrix",
                "A is a permutation matrix",
            );
        }
        GroupoidSpec::Product(fs) => {
            for (i, f) in fs.iter().enumerate() {
                let sub = if path.is_empty() {
                    format!("factors[{i}]")
                } else {
                    format!("{path}.factors[{i}]")
                };
                walk(f, &sub, report);
            }
        }
        GroupoidSpec::Finite(_) | GroupoidSpec::Bratteli(_) | GroupoidSpec::DirectHomology(_) => {}
    }
}

pub fn check_hypotheses(spec: &GroupoidSpec) -> HypothesisReport {
    let mut report = HypothesisReport::default();
    walk(spec, "", &mut report);
    report
}
