use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AbelianError;

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_m` kept in
/// invariant-factor form: `2 ≤ t_1 | t_2 | … | t_m`.
///
/// Every constructor normalizes, so `==` is isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z`, `n = ±1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(std::iter::once(n.into()))
    }

    /// Direct sum of cyclic groups `Z/n_i`, with `n_i = 0` meaning `Z`.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let mut rank = 0;
        let mut torsion = Vec::new();
        for n in orders {
            let n = n.abs();
            if n.is_zero() {
                rank += 1;
            } else if !n.is_one() {
                torsion.push(n);
            }
        }
        FgAbGroup {
            rank,
            torsion: normalize_torsion(torsion),
        }
    }

    /// Builds from already-invariant factors, rejecting anything that is
    /// not a divisibility chain of entries ≥ 2.
    pub fn from_invariant_factors(rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbelianError> {
        for (i, t) in torsion.iter().enumerate() {
            if t < &BigInt::from(2) {
                return Err(AbelianError::BadInvariantFactor(t.clone()));
            }
            if i > 0 && !(t % &torsion[i - 1]).is_zero() {
                return Err(AbelianError::BrokenChain {
                    prev: torsion[i - 1].clone(),
                    next: t.clone(),
                });
            }
        }
        Ok(FgAbGroup { rank, torsion })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of a finite group; `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Cyclic decomposition: `rank` zeros followed by the torsion factors.
    fn orders(&self) -> impl Iterator<Item = BigInt> + '_ {
        std::iter::repeat_n(BigInt::zero(), self.rank)
            .chain(self.torsion.iter().cloned())
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        Self::from_cyclic_orders(self.orders().chain(other.orders()))
    }

    pub fn sum_all<'a, I: IntoIterator<Item = &'a FgAbGroup>>(groups: I) -> FgAbGroup {
        Self::from_cyclic_orders(groups.into_iter().flat_map(|g| g.orders().collect::<Vec<_>>()))
    }

    /// `n`-fold direct sum.
    pub fn power(&self, n: usize) -> FgAbGroup {
        let mut orders = Vec::with_capacity(n * (self.rank + self.torsion.len()));
        for _ in 0..n {
            orders.extend(self.orders());
        }
        Self::from_cyclic_orders(orders)
    }

    /// Number of generators of `self ⊗ Z/2`, i.e. its F_2-dimension.
    pub fn mod2_dimension(&self) -> usize {
        self.rank + self.torsion.iter().filter(|t| t.is_even()).count()
    }
}

/// Pairwise gcd/lcm sweep: after handling index i, `t_i` divides every later
/// entry. Products and isomorphism type are preserved.
fn normalize_torsion(mut t: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            let g = t[i].gcd(&t[j]);
            let l = t[i].lcm(&t[j]);
            t[i] = g;
            t[j] = l;
        }
    }
    t.retain(|x| !x.is_one());
    t
}

fn cyclic_tensor(a: &BigInt, b: &BigInt) -> BigInt {
    // Z/0 = Z, and gcd(0, b) = b covers the free cases.
    a.gcd(b)
}

/// `A ⊗ B`, computed summand-by-summand on cyclic decompositions.
pub fn tensor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let mut out = Vec::new();
    for x in a.orders() {
        for y in b.orders() {
            out.push(cyclic_tensor(&x, &y));
        }
    }
    FgAbGroup::from_cyclic_orders(out)
}

/// `Tor(A, B)`: vanishes on free summands, `Z/gcd(a,b)` on pairs of cyclics.
pub fn tor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let mut out = Vec::new();
    for x in a.torsion() {
        for y in b.torsion() {
            out.push(x.gcd(y));
        }
    }
    FgAbGroup::from_cyclic_orders(out)
}

/// `A ⊗ Z/2`.
pub fn mod2(a: &FgAbGroup) -> FgAbGroup {
    FgAbGroup::from_cyclic_orders(std::iter::repeat_n(BigInt::from(2), a.mod2_dimension()))
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let mut run = 1;
            while i + run < self.torsion.len() && &self.torsion[i + run] == t {
                run += 1;
            }
            if run == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self})")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupJson {
    rank: usize,
    #[serde(default, with = "crate::bigjson::vec")]
    torsion: Vec<BigInt>,
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupJson {
            rank: self.rank,
            torsion: self.torsion.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = GroupJson::deserialize(deserializer)?;
        FgAbGroup::from_invariant_factors(raw.rank, raw.torsion).map_err(serde::de::Error::custom)
    }
}
