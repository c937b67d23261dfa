use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::ModelError;
use crate::abelian::IntMatrix;

/// Shift of finite type given by its adjacency matrix: `A(j, i)` counts the
/// edges from vertex `i` to vertex `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftSpec {
    matrix: IntMatrix,
    irreducible: bool,
    permutation: bool,
}

/// An edge of the graph underlying an [`SftSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: usize,
    pub source: usize,
    pub target: usize,
}

impl SftSpec {
    pub fn new(matrix: IntMatrix) -> Result<Self, ModelError> {
        if !matrix.is_square() {
            return Err(ModelError::invariant("matrix", "adjacency matrix must be square"));
        }
        if matrix.rows() == 0 {
            return Err(ModelError::invariant("matrix", "graph needs at least one vertex"));
        }
        if !matrix.is_nonnegative() {
            return Err(ModelError::invariant("matrix", "adjacency entries must be nonnegative"));
        }
        let irreducible = is_irreducible(&matrix);
        let permutation = is_permutation(&matrix);
        Ok(SftSpec {
            matrix,
            irreducible,
            permutation,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, ModelError> {
        let m = IntMatrix::from_rows(rows).map_err(|e| ModelError::invariant("matrix", e.to_string()))?;
        Self::new(m)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn vertices(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn is_permutation(&self) -> bool {
        self.permutation
    }

    /// Edges numbered by source vertex, then target vertex, then
    /// multiplicity: for `[[2]]` the edges are `0` and `1`.
    pub fn edges(&self) -> Result<Vec<Edge>, ModelError> {
        let n = self.vertices();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let count = self.matrix[(j, i)]
                    .to_usize()
                    .filter(|c| *c <= 1 << 20)
                    .ok_or_else(|| ModelError::invariant("matrix", "too many edges to enumerate"))?;
                for _ in 0..count {
                    out.push(Edge {
                        id: out.len(),
                        source: i,
                        target: j,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Strong connectivity of the graph with an edge `i → j` whenever `A(j, i) > 0`.
pub(crate) fn is_irreducible(a: &IntMatrix) -> bool {
    let n = a.rows();
    // reach[i][j]: path of length ≥ 1 from i to j
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            reach[i][j] = !a[(j, i)].is_zero();
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|x| *x))
}

pub(crate) fn is_permutation(a: &IntMatrix) -> bool {
    let n = a.rows();
    if a.entries().iter().any(|e| !(e.is_zero() || e.is_one())) {
        return false;
    }
    let row_ok = (0..n).all(|i| a.row(i).iter().filter(|e| e.is_one()).count() == 1);
    let col_ok = (0..n).all(|j| (0..n).filter(|&i| a[(i, j)].is_one()).count() == 1);
    row_ok && col_ok
}

/// One-vertex `k`-graph; `edge_counts[i] = |Λ^{ε_i}|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGraphSpec {
    edge_counts: Vec<BigInt>,
}

impl KGraphSpec {
    pub fn new(edge_counts: Vec<BigInt>) -> Result<Self, ModelError> {
        if edge_counts.is_empty() {
            return Err(ModelError::invariant("edge_counts", "a k-graph needs k >= 1 directions"));
        }
        for (i, c) in edge_counts.iter().enumerate() {
            if c < &BigInt::from(2) {
                return Err(ModelError::invariant(
                    format!("edge_counts[{i}]"),
                    format!("edge count {c} is below 2, so N_{} = |Λ^ε| − 1 < 1", i + 1),
                ));
            }
        }
        Ok(KGraphSpec { edge_counts })
    }

    pub fn k(&self) -> usize {
        self.edge_counts.len()
    }

    pub fn edge_counts(&self) -> &[BigInt] {
        &self.edge_counts
    }

    /// `N_i = |Λ^{ε_i}| − 1`.
    pub fn n_values(&self) -> Vec<BigInt> {
        self.edge_counts.iter().map(|c| c - 1).collect()
    }
}

/// Katsura–Exel–Pardo data: nonnegative `A` and integer `B` of the same
/// size with matching zero patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KepSpec {
    a: IntMatrix,
    b: IntMatrix,
}

impl KepSpec {
    pub fn new(a: IntMatrix, b: IntMatrix) -> Result<Self, ModelError> {
        if !a.is_square() || a.rows() == 0 {
            return Err(ModelError::invariant("A", "A must be a nonempty square matrix"));
        }
        if b.rows() != a.rows() || b.cols() != a.cols() {
            return Err(ModelError::invariant("B", "B must have the same shape as A"));
        }
        if !a.is_nonnegative() {
            return Err(ModelError::invariant("A", "entries of A must be nonnegative"));
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if a[(i, j)].is_zero() != b[(i, j)].is_zero() {
                    return Err(ModelError::invariant(
                        format!("B[{i}][{j}]"),
                        format!(
                            "zero-pattern mismatch: A[{i}][{j}] = {} but B[{i}][{j}] = {}",
                            a[(i, j)],
                            b[(i, j)]
                        ),
                    ));
                }
            }
        }
        Ok(KepSpec { a, b })
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }
}

/// Bratteli diagram: a finite prefix of incidence matrices, optionally
/// followed by the last matrix repeated forever.
///
/// Matrix `l` maps level `l` to level `l + 1` and has shape
/// `levels[l + 1] × levels[l]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliSpec {
    levels: Vec<usize>,
    incidence: Vec<IntMatrix>,
    stationary: bool,
}

impl BratteliSpec {
    pub fn new(incidence: Vec<IntMatrix>, stationary: bool) -> Result<Self, ModelError> {
        if incidence.is_empty() {
            return Err(ModelError::invariant("incidence", "at least one incidence matrix is required"));
        }
        let mut levels = vec![incidence[0].cols()];
        for (l, m) in incidence.iter().enumerate() {
            if !m.is_nonnegative() {
                return Err(ModelError::invariant(format!("incidence[{l}]"), "incidence entries must be nonnegative"));
            }
            if m.cols() != levels[l] {
                return Err(ModelError::invariant(
                    format!("incidence[{l}]"),
                    format!("expected {} columns to match level {l}, found {}", levels[l], m.cols()),
                ));
            }
            levels.push(m.rows());
        }
        if stationary && !incidence.last().expect("nonempty").is_square() {
            return Err(ModelError::invariant(
                format!("incidence[{}]", incidence.len() - 1),
                "the repeated tail matrix of a stationary diagram must be square",
            ));
        }
        Ok(BratteliSpec {
            levels,
            incidence,
            stationary,
        })
    }

    /// Stored levels (prefix plus one entry per matrix).
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn incidence(&self) -> &[IntMatrix] {
        &self.incidence
    }

    pub fn is_stationary(&self) -> bool {
        self.stationary
    }

    /// The map from level `l` to level `l + 1`, if the diagram defines it.
    pub fn map_at(&self, l: usize) -> Option<&IntMatrix> {
        match self.incidence.get(l) {
            Some(m) => Some(m),
            None if self.stationary => self.incidence.last(),
            None => None,
        }
    }

    pub fn level_size(&self, l: usize) -> Option<usize> {
        match self.levels.get(l) {
            Some(n) => Some(*n),
            None if self.stationary => self.levels.last().copied(),
            None => None,
        }
    }
}
