//! Graded homology of groupoid specifications.
//!
//! Formula classes are computed in closed form, products by the Künneth
//! formula, and finite groupoids by reducing the bar complex directly.

mod af;
mod bruteforce;
mod formulas;
mod kunneth;

use serde::Serialize;
use thiserror::Error;

use crate::graded::GradedAbGroup;
use crate::models::GroupoidSpec;

pub use af::{af_homology, AfLimit, AfReport};
pub use bruteforce::{
    boundary_matrix, bruteforce_homology, bruteforce_homology_with, required_bytes, BruteForceOptions,
    DEFAULT_MEMORY_BUDGET,
};
pub use formulas::{kep_homology, kgraph_homology, sft_homology};
pub use kunneth::{kunneth, kunneth_truncated};

pub const DEFAULT_MAX_DEGREE: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("brute force needs about {required} bytes, over the budget of {budget} bytes")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("Künneth needs finitely supported inputs: {0}")]
    NonFiniteSupport(String),
    #[error("level {level} is outside the {stored} stored levels of a non-stationary diagram")]
    LevelOutOfRange { level: usize, stored: usize },
    #[error("H_0 of this AF groupoid is not finitely generated (rational rank {rational_rank}); use the AF report")]
    AfNotFinitelyGenerated { rational_rank: usize },
    #[error("H_0 of this AF groupoid is not determined by a finite prefix; use the AF report")]
    AfPrefixOnly,
    #[error("result too large: {0}")]
    TooLarge(String),
}

/// Which engine produced a homology result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Formula,
    Kunneth,
    Bruteforce,
    Passthrough,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Formula => "formula",
            Engine::Kunneth => "kunneth",
            Engine::Bruteforce => "bruteforce",
            Engine::Passthrough => "passthrough",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    /// Degrees computed for finite groupoids.
    pub max_degree: usize,
    pub bruteforce: BruteForceOptions,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            max_degree: DEFAULT_MAX_DEGREE,
            bruteforce: BruteForceOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computed {
    pub homology: GradedAbGroup,
    pub engine: Engine,
}

pub fn homology_of(spec: &GroupoidSpec) -> Result<GradedAbGroup, HomologyError> {
    compute(spec, &HomologyOptions::default()).map(|c| c.homology)
}

/// Dispatches on the spec kind. Products fold Künneth from the left; a
/// product with a finite factor is only known through `max_degree`.
pub fn compute(spec: &GroupoidSpec, opts: &HomologyOptions) -> Result<Computed, HomologyError> {
    let (homology, engine) = match spec {
        GroupoidSpec::Sft(s) => (sft_homology(s), Engine::Formula),
        GroupoidSpec::KGraph(k) => (kgraph_homology(k)?, Engine::Formula),
        GroupoidSpec::Kep(k) => (kep_homology(k), Engine::Formula),
        GroupoidSpec::Bratteli(b) => {
            let report = af_homology(b, 0)?;
            let h = match report.limit {
                AfLimit::FinitelyGenerated { .. } => report.homology().expect("finitely generated"),
                AfLimit::NotFinitelyGenerated { rational_rank, .. } => {
                    return Err(HomologyError::AfNotFinitelyGenerated { rational_rank })
                }
                AfLimit::PrefixOnly => return Err(HomologyError::AfPrefixOnly),
            };
            (h, Engine::Formula)
        }
        GroupoidSpec::Finite(g) => (
            bruteforce_homology_with(g, opts.max_degree, &opts.bruteforce)?,
            Engine::Bruteforce,
        ),
        GroupoidSpec::DirectHomology(h) => (h.clone(), Engine::Passthrough),
        GroupoidSpec::Product(factors) => {
            let mut acc = GradedAbGroup::point();
            for f in factors {
                let h = compute(f, opts)?.homology;
                acc = if acc.eventually_zero() && h.eventually_zero() {
                    kunneth(&acc, &h)?
                } else {
                    kunneth_truncated(&acc, &h)
                };
            }
            (acc, Engine::Kunneth)
        }
    };
    Ok(Computed { homology, engine })
}
