use num_traits::{One, Signed};
use serde::Serialize;

use super::HomologyError;
use crate::abelian::{kernel, smith_normal_form, FgAbGroup, IntMatrix};
use crate::graded::GradedAbGroup;
use crate::models::BratteliSpec;

/// What is known about the inductive limit `lim Z^{levels[l]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AfLimit {
    /// The limit is `Z^rank`: the tail acts unimodularly on its eventual image.
    FinitelyGenerated { rank: usize },
    /// The limit has the given rational rank but is not finitely generated;
    /// `eventual_determinant` is the determinant of the tail on its eventual
    /// image lattice.
    NotFinitelyGenerated {
        rational_rank: usize,
        eventual_determinant: crate::bigjson::JsonInt,
    },
    /// Only a finite prefix is stored, so the limit is not determined.
    PrefixOnly,
}

/// Structural description of `H_*` of an AF groupoid at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AfReport {
    pub level: usize,
    /// `Z^{levels[level]}` in degree 0; every higher degree vanishes.
    pub stage: GradedAbGroup,
    /// Incidence map from this level to the next, when defined.
    pub map_to_next: Option<IntMatrix>,
    /// Product of incidence maps from this level through the stabilization
    /// point (stationary) or through the last stored level.
    pub telescoped: IntMatrix,
    /// Rank of `telescoped`; for stationary diagrams this is the rank of the
    /// image of the stage in the limit tensored with `Q`.
    pub image_rank: usize,
    /// Rational rank of the whole limit (stationary diagrams only).
    pub rational_rank: Option<usize>,
    pub limit: AfLimit,
}

impl AfReport {
    /// `H_*` of the groupoid when its `H_0` is finitely generated.
    pub fn homology(&self) -> Option<GradedAbGroup> {
        match self.limit {
            AfLimit::FinitelyGenerated { rank } => Some(GradedAbGroup::concentrated(0, FgAbGroup::free(rank))),
            _ => None,
        }
    }
}

fn product(maps: &[IntMatrix], from: usize) -> IntMatrix {
    maps.iter().fold(IntMatrix::identity(from), |acc, m| m * &acc)
}

pub fn af_homology(spec: &BratteliSpec, level: usize) -> Result<AfReport, HomologyError> {
    let size = spec.level_size(level).ok_or(HomologyError::LevelOutOfRange {
        level,
        stored: spec.levels().len(),
    })?;
    let stage = GradedAbGroup::concentrated(0, FgAbGroup::free(size));
    let map_to_next = spec.map_at(level).cloned();
    let inc = spec.incidence();
    if !spec.is_stationary() {
        let telescoped = product(&inc[level.min(inc.len())..], size);
        return Ok(AfReport {
            level,
            stage,
            map_to_next,
            image_rank: telescoped.rank(),
            telescoped,
            rational_rank: None,
            limit: AfLimit::PrefixOnly,
        });
    }
    let tail_start = inc.len() - 1;
    let tail = &inc[tail_start];
    let n = tail.rows();
    let q = if level < tail_start {
        product(&inc[level..tail_start], size)
    } else {
        IntMatrix::identity(n)
    };
    let eventual = tail.pow(n as u32);
    let telescoped = &eventual * &q;
    let (rational_rank, det) = eventual_action(tail, &eventual);
    let limit = if det.abs().is_one() || rational_rank == 0 {
        AfLimit::FinitelyGenerated { rank: rational_rank }
    } else {
        AfLimit::NotFinitelyGenerated {
            rational_rank,
            eventual_determinant: crate::bigjson::JsonInt(det),
        }
    };
    Ok(AfReport {
        level,
        stage,
        map_to_next,
        image_rank: telescoped.rank(),
        telescoped,
        rational_rank: Some(rational_rank),
        limit,
    })
}

/// Rank and determinant of `m` restricted to the saturated lattice
/// `W = Z^n ∩ Q·im(mⁿ)`. The limit of `Z^n →m Z^n →m …` equals the limit
/// over `W`, which is finitely generated iff `m|_W` is unimodular.
fn eventual_action(m: &IntMatrix, eventual: &IntMatrix) -> (usize, num_bigint::BigInt) {
    let left_kernel = kernel(&eventual.transpose()).basis;
    let w = kernel(&left_kernel.transpose()).basis;
    let r = w.cols();
    if r == 0 {
        return (0, num_bigint::BigInt::one());
    }
    // W is saturated, so its Smith form is [I_r; 0] and V·[I_r 0]·U is a
    // left inverse over Z.
    let snf = smith_normal_form(&w);
    let top_u = IntMatrix::from_rows(&snf.u.to_rows()[..r]).expect("rectangular");
    let left = &snf.v * &top_u;
    let t = &(&left * m) * &w;
    (r, t.determinant())
}
