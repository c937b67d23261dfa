use serde::Serialize;

use crate::abelian::FgAbGroup;
use crate::graded::GradedAbGroup;

/// `k = min{* : H_*(G) ≠ 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "degree", rename_all = "kebab-case")]
pub enum LowestDegree {
    Exact(usize),
    /// Every degree vanishes.
    Infinite,
    /// Every known degree vanishes, with degrees past `n − 1` unknown.
    AtLeast(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    /// Stable machine-readable tag.
    pub id: &'static str,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<FgAbGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingVerdict {
    pub k: LowestDegree,
    pub integrally_acyclic: bool,
    pub full_equals_derived: bool,
    pub conclusions: Vec<Conclusion>,
}

pub fn vanishing_report(h: &GradedAbGroup) -> VanishingVerdict {
    let k = match (h.lowest_nonzero_degree(), h.known_through()) {
        (Some(n), _) => LowestDegree::Exact(n),
        (None, None) => LowestDegree::Infinite,
        (None, Some(t)) => LowestDegree::AtLeast(t + 1),
    };
    let mut conclusions = Vec::new();
    // Degrees j with 0 < j < bound have H_j(F(G)) = 0.
    let bound = match k {
        LowestDegree::Exact(n) | LowestDegree::AtLeast(n) => Some(n),
        LowestDegree::Infinite => None,
    };
    match bound {
        Some(n) if n >= 2 => conclusions.push(Conclusion {
            id: "vanishing-below-k",
            statement: if n == 2 {
                "H_1(F(G)) = 0".to_string()
            } else {
                format!("H_j(F(G)) = 0 for 0 < j < {n}")
            },
            degree: None,
            group: None,
        }),
        None => conclusions.push(Conclusion {
            id: "vanishing-below-k",
            statement: "H_j(F(G)) = 0 for all j > 0".to_string(),
            degree: None,
            group: None,
        }),
        _ => {}
    }
    if let LowestDegree::Exact(n) = k {
        if n >= 1 {
            let g = h.get(n);
            conclusions.push(Conclusion {
                id: "first-nonvanishing",
                statement: format!("H_{n}(F(G)) = H_{n}(G) = {g}"),
                degree: Some(n),
                group: Some(g),
            });
        }
    }
    let full_equals_derived = bound.is_none_or(|n| n >= 2);
    if full_equals_derived {
        conclusions.push(Conclusion {
            id: "full-equals-derived",
            statement: "F(G) = D(G)".to_string(),
            degree: None,
            group: None,
        });
    }
    let integrally_acyclic = k == LowestDegree::Infinite;
    if integrally_acyclic {
        conclusions.push(Conclusion {
            id: "integrally-acyclic",
            statement: "F(G) is integrally acyclic".to_string(),
            degree: None,
            group: None,
        });
    }
    conclusions.push(Conclusion {
        id: "derived-perfect",
        statement: "H_1(D(G)) = 0".to_string(),
        degree: Some(1),
        group: Some(FgAbGroup::trivial()),
    });
    VanishingVerdict {
        k,
        integrally_acyclic,
        full_equals_derived,
        conclusions,
    }
}
