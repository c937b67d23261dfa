//! Exact integer linear algebra and finitely generated abelian groups.
//!
//! Everything here is exact: matrices carry [`BigInt`] entries and all
//! reductions are unimodular row/column operations.

mod group;
mod matrix;
mod smith;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

pub use group::{mod2, tensor, tor, FgAbGroup};
pub use matrix::IntMatrix;
pub use smith::{smith_invariants, smith_normal_form, SmithDecomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("{len} entries do not fill a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("invariant factor {0} is not at least 2")]
    BadInvariantFactor(BigInt),
    #[error("invariant factors {prev} and {next} break the divisibility chain")]
    BrokenChain { prev: BigInt, next: BigInt },
}

/// `coker(M: Z^cols → Z^rows)`.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let factors = smith_invariants(m);
    let free = m.rows() - factors.len();
    FgAbGroup::from_cyclic_orders(factors).direct_sum(&FgAbGroup::free(free))
}

/// Kernel of `M: Z^cols → Z^rows` with an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub group: FgAbGroup,
    /// `cols × nullity`; columns span the kernel, in column Hermite form.
    pub basis: IntMatrix,
}

pub fn kernel(m: &IntMatrix) -> Kernel {
    let snf = smith_normal_form(m);
    let nullity = m.cols() - snf.rank();
    let raw: Vec<Vec<BigInt>> = (snf.rank()..m.cols()).map(|j| snf.v.column(j)).collect();
    let reduced = smith::hermite_rows(raw);
    let basis = if nullity == 0 {
        IntMatrix::zeros(m.cols(), 0)
    } else {
        IntMatrix::from_rows(&reduced)
            .expect("kernel rows share a length")
            .transpose()
    };
    Kernel {
        group: FgAbGroup::free(nullity),
        basis,
    }
}

/// `|det U| = 1` check used by tests and callers that receive foreign transforms.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && num_traits::Signed::abs(&m.determinant()).is_one()
}
