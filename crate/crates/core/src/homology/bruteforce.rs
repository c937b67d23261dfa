use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::HomologyError;
use crate::abelian::{smith_invariants, FgAbGroup, IntMatrix};
use crate::graded::GradedAbGroup;
use crate::models::FiniteGroupoid;

pub const DEFAULT_MEMORY_BUDGET: u64 = 256 * 1024 * 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceOptions {
    /// Upper bound in bytes on the dense boundary matrices and tuple tables.
    pub memory_budget: u64,
    /// Reduce the boundary matrices of different degrees concurrently.
    pub parallel: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            memory_budget: DEFAULT_MEMORY_BUDGET,
            parallel: true,
        }
    }
}

/// Bytes needed to hold every chain group and boundary matrix through
/// `∂_{max_degree + 1}`.
pub fn required_bytes(g: &FiniteGroupoid, max_degree: usize) -> u128 {
    let cell = std::mem::size_of::<BigInt>() as u128;
    let word = std::mem::size_of::<usize>() as u128;
    let counts: Vec<u128> = (0..=max_degree + 1).map(|nu| g.composable_count(nu)).collect();
    let mut total: u128 = 0;
    for nu in 0..counts.len() {
        let tuples = counts[nu].saturating_mul((nu.max(1) as u128) * word + 3 * word);
        total = total.saturating_add(tuples);
        if nu > 0 {
            total = total.saturating_add(counts[nu].saturating_mul(counts[nu - 1]).saturating_mul(cell));
        }
    }
    total
}

pub fn bruteforce_homology(g: &FiniteGroupoid, max_degree: usize) -> Result<GradedAbGroup, HomologyError> {
    bruteforce_homology_with(g, max_degree, &BruteForceOptions::default())
}

/// Homology of the bar complex of `g` in degrees `0..=max_degree`.
pub fn bruteforce_homology_with(
    g: &FiniteGroupoid,
    max_degree: usize,
    opts: &BruteForceOptions,
) -> Result<GradedAbGroup, HomologyError> {
    let required = required_bytes(g, max_degree);
    if required > opts.memory_budget as u128 {
        return Err(HomologyError::BudgetExceeded {
            required,
            budget: opts.memory_budget,
        });
    }
    let chains: Vec<Vec<Vec<usize>>> = (0..=max_degree + 1).map(|nu| g.composable_tuples(nu)).collect();
    let reduce = |nu: usize| smith_invariants(&boundary_matrix(g, &chains[nu - 1], &chains[nu], nu));
    let factors: Vec<Vec<BigInt>> = if opts.parallel {
        (1..=max_degree + 1).into_par_iter().map(reduce).collect()
    } else {
        (1..=max_degree + 1).map(reduce).collect()
    };
    // factors[nu - 1] belongs to ∂_nu.
    let rank = |nu: usize| if nu == 0 { 0 } else { factors[nu - 1].len() };
    let groups = (0..=max_degree).map(|nu| {
        let free = chains[nu].len() - rank(nu) - rank(nu + 1);
        let torsion = factors[nu].iter().filter(|d| !d.is_one()).cloned();
        (nu, FgAbGroup::from_cyclic_orders(torsion).direct_sum(&FgAbGroup::free(free)))
    });
    Ok(GradedAbGroup::truncated(groups, max_degree).expect("degrees within bound"))
}

/// `∂_ν : C_ν → C_{ν−1}` as a `|C_{ν−1}| × |C_ν|` matrix.
pub fn boundary_matrix(g: &FiniteGroupoid, lower: &[Vec<usize>], upper: &[Vec<usize>], nu: usize) -> IntMatrix {
    let index: HashMap<&[usize], usize> = lower.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut m = IntMatrix::zeros(lower.len(), upper.len());
    let mut bump = |face: &[usize], col: usize, sign: i64| {
        let row = index[face];
        m[(row, col)] += sign;
    };
    for (col, t) in upper.iter().enumerate() {
        if nu == 1 {
            bump(&[g.source(t[0])], col, 1);
            bump(&[g.range(t[0])], col, -1);
            continue;
        }
        for mu in 0..=nu {
            let sign = if mu % 2 == 0 { 1 } else { -1 };
            let face: Vec<usize> = if mu == 0 {
                t[1..].to_vec()
            } else if mu == nu {
                t[..nu - 1].to_vec()
            } else {
                let mut f = Vec::with_capacity(nu - 1);
                f.extend_from_slice(&t[..mu - 1]);
                f.push(g.compose(t[mu - 1], t[mu]).expect("tuple is composable"));
                f.extend_from_slice(&t[mu + 1..]);
                f
            };
            bump(&face, col, sign);
        }
    }
    m
}
