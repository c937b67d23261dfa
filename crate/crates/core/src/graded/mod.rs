//! Graded abelian groups, graded rational dimensions and Poincaré series.

mod series;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::abelian::FgAbGroup;

pub use series::{ext_sym_dims, poincare_derived, poincare_full, TruncatedSeries, DEFAULT_TRUNCATION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("degree {degree} exceeds the declared support bound {bound}")]
    BeyondSupport { degree: usize, bound: usize },
    #[error("a graded group that is not eventually zero needs an explicit max_support")]
    MissingBound,
    #[error("odd part has a generator in even degree {0}")]
    OddPartParity(usize),
    #[error("even part has a generator in degree {0}; only even degrees >= 2 are allowed")]
    EvenPartParity(usize),
    #[error("degree key {0:?} is not a nonnegative integer")]
    BadDegree(String),
}

/// A degree-indexed family of finitely generated abelian groups.
///
/// Only nontrivial degrees are stored. `max_support` has two readings:
/// with `eventually_zero` set it bounds the support (everything above is
/// zero); without it, it is the last degree that is known and groups above
/// it are unknown.
#[derive(Clone, Default)]
pub struct GradedAbGroup {
    groups: BTreeMap<usize, FgAbGroup>,
    max_support: Option<usize>,
    eventually_zero: bool,
}

impl GradedAbGroup {
    /// Finitely supported family with support bound `bound`.
    pub fn finite<I>(groups: I, bound: usize) -> Result<Self, GradedError>
    where
        I: IntoIterator<Item = (usize, FgAbGroup)>,
    {
        let mut g = GradedAbGroup {
            groups: BTreeMap::new(),
            max_support: Some(bound),
            eventually_zero: true,
        };
        for (n, a) in groups {
            if n > bound && !a.is_trivial() {
                return Err(GradedError::BeyondSupport { degree: n, bound });
            }
            g.insert_sum(n, a);
        }
        Ok(g)
    }

    /// Finitely supported family, bound taken from the largest stored degree.
    pub fn from_degrees<I>(groups: I) -> Self
    where
        I: IntoIterator<Item = (usize, FgAbGroup)>,
    {
        let mut g = GradedAbGroup {
            groups: BTreeMap::new(),
            max_support: Some(0),
            eventually_zero: true,
        };
        for (n, a) in groups {
            g.insert_sum(n, a);
        }
        g.max_support = Some(g.groups.keys().next_back().copied().unwrap_or(0));
        g
    }

    /// Family known in degrees `0..=known_through` only.
    pub fn truncated<I>(groups: I, known_through: usize) -> Result<Self, GradedError>
    where
        I: IntoIterator<Item = (usize, FgAbGroup)>,
    {
        let mut g = Self::finite(groups, known_through)?;
        g.eventually_zero = false;
        Ok(g)
    }

    /// All-trivial homology.
    pub fn zero() -> Self {
        GradedAbGroup {
            groups: BTreeMap::new(),
            max_support: Some(0),
            eventually_zero: true,
        }
    }

    /// Homology of a point: `Z` in degree 0.
    pub fn point() -> Self {
        Self::from_degrees([(0, FgAbGroup::free(1))])
    }

    /// `A` concentrated in one degree.
    pub fn concentrated(degree: usize, group: FgAbGroup) -> Self {
        let mut g = Self::from_degrees([(degree, group)]);
        g.max_support = Some(degree);
        g
    }

    fn insert_sum(&mut self, n: usize, a: FgAbGroup) {
        if a.is_trivial() {
            return;
        }
        let merged = match self.groups.remove(&n) {
            Some(prev) => prev.direct_sum(&a),
            None => a,
        };
        self.groups.insert(n, merged);
    }

    pub fn get(&self, degree: usize) -> FgAbGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    /// `None` when the degree lies beyond what is known.
    pub fn try_get(&self, degree: usize) -> Option<FgAbGroup> {
        match self.known_through() {
            Some(k) if degree > k => None,
            _ => Some(self.get(degree)),
        }
    }

    pub fn groups(&self) -> &BTreeMap<usize, FgAbGroup> {
        &self.groups
    }

    pub fn max_support(&self) -> Option<usize> {
        self.max_support
    }

    pub fn eventually_zero(&self) -> bool {
        self.eventually_zero
    }

    /// Last degree with known value; `None` means every degree is known.
    pub fn known_through(&self) -> Option<usize> {
        if self.eventually_zero {
            None
        } else {
            self.max_support
        }
    }

    pub fn is_all_trivial(&self) -> bool {
        self.groups.is_empty()
    }

    /// Smallest degree carrying a nonzero group.
    pub fn lowest_nonzero_degree(&self) -> Option<usize> {
        self.groups.keys().next().copied()
    }

    /// Largest degree carrying a nonzero group.
    pub fn top_degree(&self) -> Option<usize> {
        self.groups.keys().next_back().copied()
    }

    /// Restriction to degrees `0..=degree`, marked as truncated there.
    pub fn truncate(&self, degree: usize) -> GradedAbGroup {
        let through = match self.known_through() {
            Some(k) => k.min(degree),
            None => degree,
        };
        GradedAbGroup {
            groups: self.groups.range(..=through).map(|(k, v)| (*k, v.clone())).collect(),
            max_support: Some(through),
            eventually_zero: false,
        }
    }
}

impl PartialEq for GradedAbGroup {
    /// Two eventually-zero families are equal when their groups agree; the
    /// support bound is only an upper bound. Truncated families also need
    /// the same known range.
    fn eq(&self, other: &Self) -> bool {
        self.groups == other.groups
            && self.eventually_zero == other.eventually_zero
            && (self.eventually_zero || self.max_support == other.max_support)
    }
}

impl Eq for GradedAbGroup {}

impl fmt::Debug for GradedAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAbGroup({self})")
    }
}

impl fmt::Display for GradedAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            write!(f, "0 in all degrees")?;
        } else {
            let parts: Vec<String> = self.groups.iter().map(|(n, g)| format!("H{n} = {g}")).collect();
            write!(f, "{}", parts.join(", "))?;
        }
        if let Some(k) = self.known_through() {
            write!(f, " (known through degree {k})")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradedJson {
    groups: BTreeMap<String, FgAbGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_support: Option<usize>,
    #[serde(default = "default_true")]
    eventually_zero: bool,
}

fn default_true() -> bool {
    true
}

impl Serialize for GradedAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // Numeric order, not string order, for the degree keys.
        use serde::ser::SerializeMap;
        struct Groups<'a>(&'a BTreeMap<usize, FgAbGroup>);
        impl Serialize for Groups<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(&k.to_string(), v)?;
                }
                m.end()
            }
        }
        let mut m = serializer.serialize_map(Some(3))?;
        m.serialize_entry("groups", &Groups(&self.groups))?;
        if let Some(b) = self.max_support {
            m.serialize_entry("max_support", &b)?;
        }
        m.serialize_entry("eventually_zero", &self.eventually_zero)?;
        m.end()
    }
}

impl GradedAbGroup {
    fn from_json(raw: GradedJson) -> Result<Self, GradedError> {
        let mut groups = Vec::new();
        for (k, v) in raw.groups {
            let n: usize = k.trim().parse().map_err(|_| GradedError::BadDegree(k.clone()))?;
            groups.push((n, v));
        }
        match (raw.eventually_zero, raw.max_support) {
            (true, Some(b)) => Self::finite(groups, b),
            (true, None) => Ok(Self::from_degrees(groups)),
            (false, Some(b)) => Self::truncated(groups, b),
            (false, None) => Err(GradedError::MissingBound),
        }
    }
}

impl<'de> Deserialize<'de> for GradedAbGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = GradedJson::deserialize(deserializer)?;
        Self::from_json(raw).map_err(serde::de::Error::custom)
    }
}

/// Graded dimension vector, for instance `d_j = dim H_j(G, Q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDims {
    dims: BTreeMap<usize, BigInt>,
}

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, T>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, T)>,
        T: Into<BigInt>,
    {
        let mut d = Self::new();
        for (k, v) in pairs {
            d.set(k, v.into());
        }
        d
    }

    /// Dense vector `(d_0, d_1, …)`.
    pub fn from_dense<T: Into<BigInt> + Clone>(dense: &[T]) -> Self {
        Self::from_pairs(dense.iter().cloned().enumerate())
    }

    pub fn set(&mut self, degree: usize, value: BigInt) {
        if value.is_zero() {
            self.dims.remove(&degree);
        } else {
            self.dims.insert(degree, value);
        }
    }

    pub fn get(&self, degree: usize) -> BigInt {
        self.dims.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.dims.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dense(&self, through: usize) -> Vec<BigInt> {
        (0..=through).map(|j| self.get(j)).collect()
    }

    pub fn dense_u64(&self, through: usize) -> Vec<u64> {
        self.dense(through)
            .iter()
            .map(|x| x.to_u64().expect("dimension fits in u64"))
            .collect()
    }

    pub fn restrict<F: Fn(usize) -> bool>(&self, keep: F) -> GradedDims {
        GradedDims {
            dims: self.dims.iter().filter(|(k, _)| keep(**k)).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Odd-degree part (degrees ≥ 1).
    pub fn odd_part(&self) -> GradedDims {
        self.restrict(|j| j % 2 == 1)
    }

    /// Even-degree part in degrees ≥ 2.
    pub fn even_positive_part(&self) -> GradedDims {
        self.restrict(|j| j >= 2 && j % 2 == 0)
    }
}

impl Serialize for GradedDims {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = serializer.serialize_map(Some(self.dims.len()))?;
        for (k, v) in &self.dims {
            m.serialize_entry(&k.to_string(), &crate::bigjson::JsonInt(v.clone()))?;
        }
        m.end()
    }
}

/// `d_j = free rank of H_j`; torsion vanishes rationally.
pub fn rationalize(h: &GradedAbGroup) -> GradedDims {
    GradedDims::from_pairs(h.groups().iter().map(|(k, g)| (*k, g.rank() as u64)))
}
