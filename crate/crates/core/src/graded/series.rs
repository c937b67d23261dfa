use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{GradedDims, GradedError};

/// Truncation degree used when the caller does not pick one.
pub const DEFAULT_TRUNCATION: usize = 32;

/// Integer power series `c_0 + c_1 t + … + c_N t^N`, exact modulo `t^{N+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(truncation: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `1 + c·t^j`.
    pub fn binomial(truncation: usize, j: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::one(truncation);
        if j <= truncation {
            s.coeffs[j] += c.into();
        }
        s
    }

    pub fn from_coeffs<T: Into<BigInt> + Clone>(truncation: usize, coeffs: &[T]) -> Self {
        let mut s = Self::zero(truncation);
        for (i, c) in coeffs.iter().take(truncation + 1).enumerate() {
            s.coeffs[i] = c.clone().into();
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| c.to_i64().expect("coefficient fits in i64")).collect()
    }

    fn common(&self, other: &Self) -> usize {
        self.truncation().min(other.truncation())
    }

    /// Multiplicative inverse; defined when the constant term is ±1.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return None;
        }
        let n = self.truncation();
        let mut inv = Self::zero(n);
        // c0 is its own inverse.
        inv.coeffs[0] = c0.clone();
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &inv.coeffs[k - i];
            }
            inv.coeffs[k] = -(acc * c0);
        }
        Some(inv)
    }

    /// Integer power; negative exponents need a unit constant term.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.truncation());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.common(rhs);
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.common(rhs);
        let mut out = TruncatedSeries::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        out
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({}) + O(t^{})", c.join(", "), self.truncation() + 1)
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("TruncatedSeries", 2)?;
        s.serialize_field("truncation", &self.truncation())?;
        let coeffs: Vec<crate::bigjson::JsonInt> =
            self.coeffs.iter().cloned().map(crate::bigjson::JsonInt).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

fn exponent(d: &BigInt) -> i64 {
    d.to_i64().expect("graded dimension fits in i64")
}

/// `∏_{j ≥ from} (1 + (−1)^{j+1} t^j)^{(−1)^{j+1} d_j}` modulo `t^{N+1}`.
/// Factors with `j > N` are ≡ 1 and skipped.
fn signed_product(d: &GradedDims, from: usize, truncation: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(truncation);
    for (j, dj) in d.iter() {
        if j < from || j > truncation {
            continue;
        }
        let sign: i64 = if j % 2 == 1 { 1 } else { -1 };
        let factor = TruncatedSeries::binomial(truncation, j, sign);
        let power = factor
            .pow(sign * exponent(dj))
            .expect("1 ± t^j is a unit");
        acc = &acc * &power;
    }
    acc
}

/// Poincaré series of the rational homology of the full group.
/// Degree 0 of `d` is ignored.
pub fn poincare_full(d: &GradedDims, truncation: usize) -> TruncatedSeries {
    signed_product(d, 1, truncation)
}

/// Poincaré series of the rational homology of the commutator subgroup:
/// the same product with the degree-1 factor dropped.
pub fn poincare_derived(d: &GradedDims, truncation: usize) -> TruncatedSeries {
    signed_product(d, 2, truncation)
}

/// Graded dimensions through degree `N` of the free graded-commutative
/// algebra on `odd ⊕ even`: an exterior algebra on the odd generators
/// tensored with a polynomial algebra on the even ones.
///
/// Counted directly by convolving one generator at a time, which keeps
/// this independent of [`poincare_full`].
pub fn ext_sym_dims(odd: &GradedDims, even: &GradedDims, truncation: usize) -> Result<GradedDims, GradedError> {
    if let Some((j, _)) = odd.iter().find(|(j, _)| j % 2 == 0) {
        return Err(GradedError::OddPartParity(j));
    }
    if let Some((j, _)) = even.iter().find(|(j, _)| j % 2 == 1 || *j == 0) {
        return Err(GradedError::EvenPartParity(j));
    }
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); truncation + 1];
    acc[0] = BigInt::one();
    for (j, count) in odd.iter() {
        if j > truncation {
            continue;
        }
        for _ in 0..exponent(count) {
            // x ↦ x·(1 + t^j): each basis monomial either omits or includes
            // the new generator, which squares to zero.
            for i in (j..=truncation).rev() {
                let v = acc[i - j].clone();
                acc[i] += v;
            }
        }
    }
    for (j, count) in even.iter() {
        if j > truncation {
            continue;
        }
        for _ in 0..exponent(count) {
            // x ↦ x·(1 + t^j + t^{2j} + …): any power of the new generator.
            for i in j..=truncation {
                let v = acc[i - j].clone();
                acc[i] += v;
            }
        }
    }
    Ok(GradedDims::from_pairs(acc.into_iter().enumerate()))
}
