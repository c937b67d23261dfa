use std::collections::HashMap;

use super::ModelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ArrowData {
    source: usize,
    range: usize,
    inverse: usize,
}

/// A finite groupoid given by explicit tables. Arrows are indexed `0..len`;
/// every unit has an identity arrow among them.
///
/// Composition `g·h` is defined exactly when `s(g) = r(h)`. The constructor
/// checks every groupoid axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    units: usize,
    arrows: Vec<ArrowData>,
    /// `compose[g * len + h]`, `None` when not composable.
    compose: Vec<Option<usize>>,
    identity: Vec<usize>,
    labels: Vec<u64>,
}

/// One arrow as supplied by a caller: `source`/`range` are unit indices,
/// `inverse` is an arrow index.
#[derive(Clone, Copy, Debug)]
pub struct ArrowSpec {
    pub source: usize,
    pub range: usize,
    pub inverse: usize,
}

impl FiniteGroupoid {
    /// Checks the axioms and builds the groupoid. `products` lists
    /// `(g, h, g·h)` for every composable pair and nothing else.
    pub fn new(units: usize, arrows: &[ArrowSpec], products: &[(usize, usize, usize)]) -> Result<Self, ModelError> {
        Self::with_labels(units, arrows, products, (0..arrows.len() as u64).collect())
    }

    pub(crate) fn with_labels(
        units: usize,
        arrows: &[ArrowSpec],
        products: &[(usize, usize, usize)],
        labels: Vec<u64>,
    ) -> Result<Self, ModelError> {
        let n = arrows.len();
        let bad = |msg: String| Err(ModelError::axiom(msg));
        for (g, a) in arrows.iter().enumerate() {
            if a.source >= units || a.range >= units {
                return bad(format!("arrow {} refers to a unit outside 0..{units}", labels[g]));
            }
            if a.inverse >= n {
                return bad(format!("arrow {} has an unknown inverse", labels[g]));
            }
        }
        let data: Vec<ArrowData> = arrows
            .iter()
            .map(|a| ArrowData {
                source: a.source,
                range: a.range,
                inverse: a.inverse,
            })
            .collect();
        let mut compose = vec![None; n * n];
        for &(g, h, gh) in products {
            if g >= n || h >= n || gh >= n {
                return bad(format!("composition entry ({g}, {h}, {gh}) names an unknown arrow"));
            }
            if data[g].source != data[h].range {
                return bad(format!(
                    "composition {}·{} listed but s({}) != r({})",
                    labels[g], labels[h], labels[g], labels[h]
                ));
            }
            match compose[g * n + h] {
                Some(prev) if prev != gh => {
                    return bad(format!("composition {}·{} listed twice with different results", labels[g], labels[h]))
                }
                _ => compose[g * n + h] = Some(gh),
            }
        }
        let mut grp = FiniteGroupoid {
            units,
            arrows: data,
            compose,
            identity: Vec::new(),
            labels,
        };
        grp.check_axioms()?;
        Ok(grp)
    }

    fn check_axioms(&mut self) -> Result<(), ModelError> {
        let n = self.arrows.len();
        let lbl = |g: usize| self.labels[g];
        for g in 0..n {
            for h in 0..n {
                let composable = self.arrows[g].source == self.arrows[h].range;
                match (composable, self.compose[g * n + h]) {
                    (true, None) => {
                        return Err(ModelError::axiom(format!("missing composition {}·{}", lbl(g), lbl(h))))
                    }
                    (true, Some(gh))
                        if (self.arrows[gh].range != self.arrows[g].range || self.arrows[gh].source != self.arrows[h].source) => {
                            return Err(ModelError::axiom(format!(
                                "{}·{} = {} has the wrong source or range",
                                lbl(g),
                                lbl(h),
                                lbl(gh)
                            )));
                        }
                    _ => {}
                }
            }
        }
        for g in 0..n {
            for h in 0..n {
                let Some(gh) = self.compose[g * n + h] else { continue };
                for k in 0..n {
                    let Some(hk) = self.compose[h * n + k] else { continue };
                    let left = self.compose[gh * n + k];
                    let right = self.compose[g * n + hk];
                    if left != right {
                        return Err(ModelError::axiom(format!(
                            "composition is not associative on ({}, {}, {})",
                            lbl(g),
                            lbl(h),
                            lbl(k)
                        )));
                    }
                }
            }
        }
        // Identity arrows: the unique e at u with e·h = h and g·e = g.
        let mut identity = Vec::with_capacity(self.units);
        for u in 0..self.units {
            let found: Vec<usize> = (0..n)
                .filter(|&e| {
                    self.arrows[e].source == u
                        && self.arrows[e].range == u
                        && (0..n).all(|h| self.arrows[h].range != u || self.compose[e * n + h] == Some(h))
                        && (0..n).all(|g| self.arrows[g].source != u || self.compose[g * n + e] == Some(g))
                })
                .collect();
            match found.as_slice() {
                [e] => identity.push(*e),
                [] => return Err(ModelError::axiom(format!("unit {u} has no identity arrow"))),
                _ => return Err(ModelError::axiom(format!("unit {u} has several identity arrows"))),
            }
        }
        for g in 0..n {
            let a = self.arrows[g];
            let inv = self.arrows[a.inverse];
            if inv.source != a.range || inv.range != a.source {
                return Err(ModelError::axiom(format!("inverse of {} has the wrong endpoints", lbl(g))));
            }
            if self.compose[g * n + a.inverse] != Some(identity[a.range]) {
                return Err(ModelError::axiom(format!("g g^-1 != r(g) for g = {}", lbl(g))));
            }
            if self.compose[a.inverse * n + g] != Some(identity[a.source]) {
                return Err(ModelError::axiom(format!("g^-1 g != s(g) for g = {}", lbl(g))));
            }
        }
        self.identity = identity;
        Ok(())
    }

    pub fn unit_count(&self) -> usize {
        self.units
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn source(&self, g: usize) -> usize {
        self.arrows[g].source
    }

    pub fn range(&self, g: usize) -> usize {
        self.arrows[g].range
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.arrows[g].inverse
    }

    pub fn identity_arrow(&self, unit: usize) -> usize {
        self.identity[unit]
    }

    pub fn label(&self, g: usize) -> u64 {
        self.labels[g]
    }

    /// `g·h`, defined iff `s(g) = r(h)`.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.compose[g * self.arrows.len() + h]
    }

    /// All `(g, h, g·h)` in lexicographic order.
    pub fn products(&self) -> Vec<(usize, usize, usize)> {
        let n = self.arrows.len();
        let mut out = Vec::new();
        for g in 0..n {
            for h in 0..n {
                if let Some(gh) = self.compose[g * n + h] {
                    out.push((g, h, gh));
                }
            }
        }
        out
    }

    pub fn arrow_specs(&self) -> Vec<ArrowSpec> {
        self.arrows
            .iter()
            .map(|a| ArrowSpec {
                source: a.source,
                range: a.range,
                inverse: a.inverse,
            })
            .collect()
    }

    /// The full equivalence relation on `n` points; arrow `(i, j)` goes from
    /// `j` to `i` and has index `i·n + j`.
    pub fn pair_groupoid(n: usize) -> Self {
        let mut arrows = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                arrows.push(ArrowSpec {
                    source: j,
                    range: i,
                    inverse: j * n + i,
                });
            }
        }
        let mut products = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    products.push((i * n + j, j * n + k, i * n + k));
                }
            }
        }
        Self::new(n, &arrows, &products).expect("pair groupoid satisfies the axioms")
    }

    /// One-object groupoid from a group multiplication table
    /// (`table[a][b] = a·b`).
    pub fn group(table: &[Vec<usize>]) -> Result<Self, ModelError> {
        let n = table.len();
        if n == 0 {
            return Err(ModelError::NotAGroup("empty multiplication table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(ModelError::NotAGroup(format!("row {a} is not a map into 0..{n}")));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| ModelError::NotAGroup("no identity element".into()))?;
        let mut arrows = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == e && table[b][a] == e)
                .ok_or_else(|| ModelError::NotAGroup(format!("element {a} has no inverse")))?;
            arrows.push(ArrowSpec {
                source: 0,
                range: 0,
                inverse: inv,
            });
        }
        let mut products = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                products.push((a, b, table[a][b]));
            }
        }
        Self::new(1, &arrows, &products).map_err(|err| match err {
            ModelError::Axiom(msg) => ModelError::NotAGroup(msg),
            other => other,
        })
    }

    /// `Z/n` as a one-object groupoid.
    pub fn cyclic_group(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::group(&table).expect("cyclic group table is a group")
    }

    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let na = self.arrows.len();
        let mut arrows = self.arrow_specs();
        arrows.extend(other.arrows.iter().map(|a| ArrowSpec {
            source: a.source + self.units,
            range: a.range + self.units,
            inverse: a.inverse + na,
        }));
        let mut products = self.products();
        products.extend(other.products().into_iter().map(|(g, h, gh)| (g + na, h + na, gh + na)));
        Self::new(self.units + other.units, &arrows, &products).expect("disjoint union of groupoids")
    }

    /// `G × H`; arrow `(g, h)` has index `g·|H| + h`, unit `(u, v)` index `u·|H⁰| + v`.
    pub fn finite_product(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let (na, nb) = (self.arrows.len(), other.arrows.len());
        let ub = other.units;
        let mut arrows = Vec::with_capacity(na * nb);
        for g in 0..na {
            for h in 0..nb {
                arrows.push(ArrowSpec {
                    source: self.source(g) * ub + other.source(h),
                    range: self.range(g) * ub + other.range(h),
                    inverse: self.inverse(g) * nb + other.inverse(h),
                });
            }
        }
        let mut products = Vec::new();
        for (g1, g2, g12) in self.products() {
            for (h1, h2, h12) in other.products() {
                products.push((g1 * nb + h1, g2 * nb + h2, g12 * nb + h12));
            }
        }
        Self::new(self.units * ub, &arrows, &products).expect("product of groupoids")
    }

    /// Composable ν-tuples `(g_1, …, g_ν)` with `s(g_i) = r(g_{i+1})`, in
    /// lexicographic order of arrow indices. `ν = 0` lists the units.
    pub fn composable_tuples(&self, nu: usize) -> Vec<Vec<usize>> {
        if nu == 0 {
            return (0..self.units).map(|u| vec![u]).collect();
        }
        let mut out: Vec<Vec<usize>> = (0..self.arrows.len()).map(|g| vec![g]).collect();
        for _ in 1..nu {
            let mut next = Vec::new();
            for t in &out {
                let last = *t.last().expect("nonempty tuple");
                for h in 0..self.arrows.len() {
                    if self.arrows[last].source == self.arrows[h].range {
                        let mut v = t.clone();
                        v.push(h);
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Number of composable ν-tuples, without enumerating them.
    pub fn composable_count(&self, nu: usize) -> u128 {
        if nu == 0 {
            return self.units as u128;
        }
        // ending[u] = number of (ν)-tuples whose last arrow has source u.
        let mut ending = vec![0u128; self.units];
        for a in &self.arrows {
            ending[a.source] += 1;
        }
        for _ in 1..nu {
            let mut next = vec![0u128; self.units];
            for a in &self.arrows {
                next[a.source] = next[a.source].saturating_add(ending[a.range]);
            }
            ending = next;
        }
        ending.iter().fold(0u128, |acc, x| acc.saturating_add(*x))
    }
}

pub(crate) fn index_labels(labels: &[u64]) -> Result<HashMap<u64, usize>, ModelError> {
    let mut map = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if map.insert(*l, i).is_some() {
            return Err(ModelError::axiom(format!("arrow id {l} appears twice")));
        }
    }
    Ok(map)
}
