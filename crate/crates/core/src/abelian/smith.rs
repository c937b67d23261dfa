use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with a
/// divisibility chain of nonnegative entries, zeros last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries `d_1 | d_2 | … | d_rank`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Transforms are optional so that callers needing only the diagonal skip
/// the O(rows² + cols²) bookkeeping.
struct Work {
    d: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_row_multiple(dst, src, f);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_col_multiple(dst, src, f);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }

    /// Smallest nonzero |entry| in the trailing block, lowest (row, col) on ties.
    fn block_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let e = &self.d[(i, j)];
                if e.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.d[(bi, bj)].abs() <= e.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| among row t and column t (from t onward).
    fn cross_pivot(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.d[(t, t)].abs();
        for i in t + 1..self.d.rows() {
            let a = self.d[(i, t)].abs();
            if !a.is_zero() && (best_abs.is_zero() || a < best_abs) {
                best = (i, t);
                best_abs = a;
            }
        }
        for j in t + 1..self.d.cols() {
            let a = self.d[(t, j)].abs();
            if !a.is_zero() && (best_abs.is_zero() || a < best_abs) {
                best = (t, j);
                best_abs = a;
            }
        }
        best
    }

    /// Clears row t and column t except the pivot. Returns once the cross is clean.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let (pi, pj) = self.cross_pivot(t);
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..self.d.rows() {
                if self.d[(i, t)].is_zero() {
                    continue;
                }
                let q = &self.d[(i, t)] / &p;
                self.add_row(i, t, &-q);
                if !self.d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..self.d.cols() {
                if self.d[(t, j)].is_zero() {
                    continue;
                }
                let q = &self.d[(t, j)] / &p;
                self.add_col(j, t, &-q);
                if !self.d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                return;
            }
        }
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let p = &self.d[(t, t)];
        for i in t + 1..self.d.rows() {
            for j in t + 1..self.d.cols() {
                if !(&self.d[(i, j)] % p).is_zero() {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Smith normal form with transforms, by deterministic pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let w = reduce(m, true);
    let rank = (0..m.rows().min(m.cols())).take_while(|&i| !w.d[(i, i)].is_zero()).count();
    SmithDecomposition {
        d: w.d,
        u: w.u.expect("transforms requested"),
        v: w.v.expect("transforms requested"),
        rank,
    }
}

/// Diagonal of the Smith form only: the nonzero invariant factors, in order.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let w = reduce(m, false);
    (0..m.rows().min(m.cols()))
        .map(|i| w.d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

fn reduce(m: &IntMatrix, transforms: bool) -> Work {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.clone(),
        u: transforms.then(|| IntMatrix::identity(rows)),
        v: transforms.then(|| IntMatrix::identity(cols)),
    };
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.block_pivot(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            w.clear_cross(t);
            match w.first_non_multiple(t) {
                // Pull the offending row into row t; the next cross pass
                // lowers the pivot to a gcd.
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    w
}

/// Row Hermite normal form of the given rows (assumed linearly independent):
/// positive pivots, strictly increasing pivot columns, and entries above each
/// pivot reduced into `[0, pivot)`.
pub(crate) fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = &rows[i][col] / &rows[r][col];
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = rows[r].clone();
        let p = pivot_row[col].clone();
        for i in 0..r {
            let q = num_integer::Integer::div_floor(&rows[i][col], &p);
            if q.is_zero() {
                continue;
            }
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    rows
}
