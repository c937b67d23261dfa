use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::HomologyError;
use crate::abelian::{cokernel, kernel, FgAbGroup};
use crate::graded::GradedAbGroup;
use crate::models::{KGraphSpec, KepSpec, SftSpec};

/// Largest number of cyclic summands a formula is allowed to materialize.
const MAX_SUMMANDS: u128 = 1 << 24;

/// `H_0 = coker(id − Aᵗ)`, `H_1 = ker(id − Aᵗ)`, zero above.
pub fn sft_homology(spec: &SftSpec) -> GradedAbGroup {
    let m = spec.matrix().transpose().identity_minus();
    GradedAbGroup::finite([(0, cokernel(&m)), (1, kernel(&m).group)], 1).expect("degrees within bound")
}

/// `(Z/g)^{binom(k−1, j)}` in degree `j` for `0 ≤ j ≤ k − 1`, with
/// `g = gcd(N_1, …, N_k)`.
pub fn kgraph_homology(spec: &KGraphSpec) -> Result<GradedAbGroup, HomologyError> {
    let k = spec.k();
    let g = spec
        .n_values()
        .iter()
        .fold(BigInt::zero(), |acc, n| acc.gcd(n));
    let top = k - 1;
    if g.is_one() {
        return Ok(GradedAbGroup::finite([], top).expect("empty family"));
    }
    let z = FgAbGroup::cyclic(g);
    let mut groups = Vec::with_capacity(k);
    let mut binom: u128 = 1;
    for j in 0..=top {
        if binom > MAX_SUMMANDS {
            return Err(HomologyError::TooLarge(format!(
                "degree {j} would need binom({top}, {j}) = {binom} cyclic summands"
            )));
        }
        groups.push((j, z.power(binom as usize)));
        binom = binom * (top - j) as u128 / (j + 1) as u128;
    }
    Ok(GradedAbGroup::finite(groups, top).expect("degrees within bound"))
}

/// `H_0 = coker(id − A)`, `H_1 = ker(id − A) ⊕ coker(id − B)`,
/// `H_2 = ker(id − B)`.
pub fn kep_homology(spec: &KepSpec) -> GradedAbGroup {
    let a = spec.a().identity_minus();
    let b = spec.b().identity_minus();
    GradedAbGroup::finite(
        [
            (0, cokernel(&a)),
            (1, kernel(&a).group.direct_sum(&cokernel(&b))),
            (2, kernel(&b).group),
        ],
        2,
    )
    .expect("degrees within bound")
}
