use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::cylinders::{parent, subtract, CylinderSet, Piece};
use super::graph::{parse_compact, Compact, SftGraph, Word};
use super::{TfgError, DEFAULT_DEPTH_CAP};

/// `(cu, u x) ↦ (cv, v x)` for every infinite continuation `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub cu: u32,
    pub u: Word,
    pub cv: u32,
    pub v: Word,
}

impl Pair {
    pub fn new(cu: u32, u: Word, cv: u32, v: Word) -> Self {
        Pair { cu, u, cv, v }
    }

    /// Pair on copy 1.
    pub fn plain(u: Word, v: Word) -> Self {
        Pair { cu: 1, u, cv: 1, v }
    }

    fn swapped(&self) -> Pair {
        Pair {
            cu: self.cv,
            u: self.v.clone(),
            cv: self.cu,
            v: self.u.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticKind {
    BadWord,
    DepthExceeded,
    VertexMismatch,
    Overlap,
    Gap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Domain,
    Range,
}

/// One validation failure with a witness word in `copy:word` notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<usize>,
    pub witness: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

/// Order of an element, as far as iterated composition can tell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Order {
    Finite { order: u64 },
    ExceedsCap { cap: u64 },
    /// The power reached words longer than the depth cap.
    DepthExceeded { power: u64 },
}

/// An element of the topological full group of an SFT groupoid or of its
/// amplification, as a prefix-exchange table. The support is the union of
/// the full path spaces on the copies the table mentions.
#[derive(Clone, Debug)]
pub struct PrefixTable {
    graph: Arc<SftGraph>,
    pairs: Vec<Pair>,
}

fn piece_name(g: &SftGraph, c: u32, w: &[u32]) -> String {
    format!("{c}:{}", Compact { word: w, digits: g.compact_ids() })
}

/// Checks that the domains and the ranges each partition the support and
/// that paired words have the same continuations.
pub fn validate(g: &SftGraph, pairs: &[Pair], depth_cap: usize) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        for (side, c, w) in [(Side::Domain, p.cu, &p.u), (Side::Range, p.cv, &p.v)] {
            if let Err(reason) = g.check_word(w) {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::BadWord,
                    side: Some(side),
                    pair: Some(i),
                    witness: super::graph::format_word(w),
                    message: format!("pair {i}: {reason}"),
                });
            } else if w.len() > depth_cap {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::DepthExceeded,
                    side: Some(side),
                    pair: Some(i),
                    witness: piece_name(g, c, w),
                    message: format!("pair {i}: word of length {} exceeds the depth cap {depth_cap}", w.len()),
                });
            }
        }
    }
    if !diags.is_empty() {
        return diags;
    }
    for (i, p) in pairs.iter().enumerate() {
        if !g.compatible(&p.u, &p.v) {
            diags.push(Diagnostic {
                kind: DiagnosticKind::VertexMismatch,
                side: None,
                pair: Some(i),
                witness: format!("{} / {}", piece_name(g, p.cu, &p.u), piece_name(g, p.cv, &p.v)),
                message: format!(
                    "pair {i}: {} and {} end at different vertices",
                    piece_name(g, p.cu, &p.u),
                    piece_name(g, p.cv, &p.v)
                ),
            });
        }
    }
    let support: BTreeSet<u32> = pairs.iter().flat_map(|p| [p.cu, p.cv]).collect();
    for side in [Side::Domain, Side::Range] {
        let mut pieces: Vec<(Piece, usize)> = pairs
            .iter()
            .enumerate()
            .map(|(i, p)| match side {
                Side::Domain => ((p.cu, g.normalized(p.u.clone())), i),
                Side::Range => ((p.cv, g.normalized(p.v.clone())), i),
            })
            .collect();
        pieces.sort();
        let label = match side {
            Side::Domain => "domain",
            Side::Range => "range",
        };
        // In sorted order every word follows its prefixes, and the words in
        // between extend the same prefix, so a stack of ancestors suffices.
        let mut stack: Vec<&Piece> = Vec::new();
        for (piece, i) in &pieces {
            while let Some(top) = stack.last() {
                if top.0 == piece.0 && piece.1.starts_with(&top.1) {
                    break;
                }
                stack.pop();
            }
            if let Some(top) = stack.last() {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::Overlap,
                    side: Some(side),
                    pair: Some(*i),
                    witness: piece_name(g, piece.0, &piece.1),
                    message: format!(
                        "{label} cylinders {} and {} overlap",
                        piece_name(g, top.0, &top.1),
                        piece_name(g, piece.0, &piece.1)
                    ),
                });
            }
            stack.push(piece);
        }
        let held: BTreeSet<Piece> = pieces.into_iter().map(|(p, _)| p).collect();
        for &c in &support {
            let mut gaps = BTreeSet::new();
            subtract(g, c, Vec::new(), &held, &mut gaps);
            if let Some((gc, gw)) = gaps.iter().next() {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::Gap,
                    side: Some(side),
                    pair: None,
                    witness: piece_name(g, *gc, gw),
                    message: format!("{label} misses the cylinder {}", piece_name(g, *gc, gw)),
                });
            }
        }
    }
    diags
}

/// Forced-edge normalization followed by greedy collapse of complete
/// sibling families; the result is sorted by domain piece.
fn canonical_pairs(g: &SftGraph, pairs: &[Pair]) -> Vec<Pair> {
    let mut map: BTreeMap<Piece, Piece> = BTreeMap::new();
    for p in pairs {
        let (mut u, mut v) = (p.u.clone(), p.v.clone());
        loop {
            let f = g.follow(&u);
            if f.len() != 1 {
                break;
            }
            u.push(f[0]);
            v.push(f[0]);
        }
        map.insert((p.cu, u), (p.cv, v));
    }
    loop {
        let family = map.iter().find_map(|((cu, u), (cv, v))| {
            let (p, _) = parent(g, u)?;
            let tail = u.len() - p.len();
            if v.len() < tail || v[v.len() - tail..] != u[p.len()..] {
                return None;
            }
            let q = v[..v.len() - tail].to_vec();
            if !g.compatible(&p, &q) {
                return None;
            }
            let kids = g.children(&p);
            let complete = kids.iter().all(|k| {
                let mut target = q.clone();
                target.extend_from_slice(&k[p.len()..]);
                map.get(&(*cu, k.clone())) == Some(&(*cv, target))
            });
            complete.then_some((*cu, p, *cv, q, kids))
        });
        let Some((cu, p, cv, q, kids)) = family else { break };
        for k in kids {
            map.remove(&(cu, k));
        }
        map.insert((cu, p), (cv, q));
    }
    map.into_iter().map(|((cu, u), (cv, v))| Pair { cu, u, cv, v }).collect()
}

impl PrefixTable {
    pub fn new(graph: Arc<SftGraph>, pairs: Vec<Pair>) -> Result<Self, TfgError> {
        Self::with_cap(graph, pairs, DEFAULT_DEPTH_CAP)
    }

    pub fn with_cap(graph: Arc<SftGraph>, pairs: Vec<Pair>, depth_cap: usize) -> Result<Self, TfgError> {
        if pairs.is_empty() {
            return Err(TfgError::Parse("a table needs at least one pair".into()));
        }
        let diags = validate(&graph, &pairs, depth_cap);
        if !diags.is_empty() {
            return Err(TfgError::Invalid(diags));
        }
        Ok(PrefixTable { graph, pairs })
    }

    /// The identity on the given copies.
    pub fn identity<I: IntoIterator<Item = u32>>(graph: Arc<SftGraph>, copies: I) -> Self {
        let pairs: Vec<Pair> = copies.into_iter().map(|c| Pair::new(c, Vec::new(), c, Vec::new())).collect();
        assert!(!pairs.is_empty(), "identity needs a nonempty support");
        PrefixTable { graph, pairs }
    }

    pub fn graph(&self) -> &Arc<SftGraph> {
        &self.graph
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.pairs.iter().map(|p| p.cu).collect()
    }

    /// Longest word in the table.
    pub fn depth(&self) -> usize {
        self.pairs.iter().map(|p| p.u.len().max(p.v.len())).max().unwrap_or(0)
    }

    /// Image of a point given by a long enough prefix, or `None` when the
    /// prefix is too short to decide or lies outside the support.
    pub fn apply(&self, copy: u32, x: &[u32]) -> Option<(u32, Word)> {
        self.pairs.iter().find(|p| p.cu == copy && x.starts_with(&p.u)).map(|p| {
            let mut y = p.v.clone();
            y.extend_from_slice(&x[p.u.len()..]);
            (p.cv, y)
        })
    }

    pub fn canonicalize(&self) -> PrefixTable {
        PrefixTable {
            graph: self.graph.clone(),
            pairs: canonical_pairs(&self.graph, &self.pairs),
        }
    }

    pub fn is_identity(&self) -> bool {
        canonical_pairs(&self.graph, &self.pairs)
            .iter()
            .all(|p| p.cu == p.cv && p.u.is_empty() && p.v.is_empty())
    }

    pub fn inverse(&self) -> PrefixTable {
        let swapped: Vec<Pair> = self.pairs.iter().map(Pair::swapped).collect();
        PrefixTable {
            graph: self.graph.clone(),
            pairs: canonical_pairs(&self.graph, &swapped),
        }
    }

    /// Extends by the identity on the copies of `copies` outside the support.
    pub fn corner_embed(&self, copies: &BTreeSet<u32>) -> Result<PrefixTable, TfgError> {
        let support = self.support();
        if !support.is_subset(copies) {
            return Err(TfgError::NotContained {
                support: support.into_iter().collect(),
                target: copies.iter().copied().collect(),
            });
        }
        let mut pairs = self.pairs.clone();
        pairs.extend(copies.difference(&support).map(|&c| Pair::new(c, Vec::new(), c, Vec::new())));
        Ok(PrefixTable {
            graph: self.graph.clone(),
            pairs: canonical_pairs(&self.graph, &pairs),
        })
    }

    fn same_graph(&self, other: &PrefixTable) -> Result<(), TfgError> {
        if *self.graph != *other.graph {
            return Err(TfgError::GraphMismatch);
        }
        Ok(())
    }

    /// Equality of the induced maps, with the identity implicit outside
    /// each support.
    pub fn equals(&self, other: &PrefixTable) -> bool {
        if *self.graph != *other.graph {
            return false;
        }
        let all: BTreeSet<u32> = self.support().union(&other.support()).copied().collect();
        let a = self.corner_embed(&all).expect("support contained in union");
        let b = other.corner_embed(&all).expect("support contained in union");
        a.pairs == b.pairs
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PrefixTable) -> Result<PrefixTable, TfgError> {
        self.compose_capped(other, DEFAULT_DEPTH_CAP)
    }

    pub fn compose_capped(&self, other: &PrefixTable, depth_cap: usize) -> Result<PrefixTable, TfgError> {
        self.same_graph(other)?;
        let (s_support, t_support) = (self.support(), other.support());
        if s_support != t_support {
            return Err(TfgError::SupportMismatch {
                left: s_support.into_iter().collect(),
                right: t_support.into_iter().collect(),
            });
        }
        let g = &*self.graph;
        let s = canonical_pairs(g, &self.pairs);
        let t = canonical_pairs(g, &other.pairs);
        let mut raw = Vec::new();
        for tp in &t {
            let covering = s.iter().find(|sp| sp.cu == tp.cv && tp.v.starts_with(&sp.u));
            match covering {
                Some(sp) => {
                    let mut w = sp.v.clone();
                    w.extend_from_slice(&tp.v[sp.u.len()..]);
                    raw.push(Pair::new(tp.cu, tp.u.clone(), sp.cv, w));
                }
                None => {
                    for sp in s.iter().filter(|sp| sp.cu == tp.cv && sp.u.starts_with(&tp.v)) {
                        let mut w = tp.u.clone();
                        w.extend_from_slice(&sp.u[tp.v.len()..]);
                        raw.push(Pair::new(tp.cu, w, sp.cv, sp.v.clone()));
                    }
                }
            }
        }
        debug_assert!(raw.len() <= s.len() * t.len());
        let pairs = canonical_pairs(g, &raw);
        if let Some(p) = pairs.iter().find(|p| p.u.len().max(p.v.len()) > depth_cap) {
            return Err(TfgError::DepthExceeded {
                cap: depth_cap,
                len: p.u.len().max(p.v.len()),
            });
        }
        Ok(PrefixTable {
            graph: self.graph.clone(),
            pairs,
        })
    }

    /// `s t s⁻¹ t⁻¹`, canonical.
    pub fn commutator(&self, other: &PrefixTable) -> Result<PrefixTable, TfgError> {
        self.compose(other)?.compose(&self.inverse())?.compose(&other.inverse())
    }

    /// Smallest `n ≤ cap` with `selfⁿ = id`.
    pub fn order(&self, cap: u64) -> Result<Order, TfgError> {
        let mut power = self.canonicalize();
        for k in 1..=cap {
            if power.is_identity() {
                return Ok(Order::Finite { order: k });
            }
            if k == cap {
                break;
            }
            power = match power.compose(self) {
                Ok(p) => p,
                Err(TfgError::DepthExceeded { .. }) => return Ok(Order::DepthExceeded { power: k + 1 }),
                Err(e) => return Err(e),
            };
        }
        Ok(Order::ExceedsCap { cap })
    }

    /// The involution of the amplified space exchanging `(1, U)` with
    /// `(2, U)` and fixing the rest of copies 1 and 2.
    pub fn zeta_witness(graph: Arc<SftGraph>, u: &[Word]) -> Result<PrefixTable, TfgError> {
        let set = CylinderSet::new(&graph, u.iter().map(|w| (1, w.clone())))?;
        let rest = CylinderSet::full_copies([1]).difference(&graph, &set);
        let mut pairs = Vec::new();
        for (_, w) in set.pieces() {
            pairs.push(Pair::new(1, w.clone(), 2, w.clone()));
            pairs.push(Pair::new(2, w.clone(), 1, w.clone()));
        }
        for (_, w) in rest.pieces() {
            pairs.push(Pair::new(1, w.clone(), 1, w.clone()));
            pairs.push(Pair::new(2, w.clone(), 2, w.clone()));
        }
        let pairs = canonical_pairs(&graph, &pairs);
        Ok(PrefixTable { graph, pairs })
    }

    /// Parses `{(00→1),(1:01→2:0),…}`; `->` is accepted for `→` and a
    /// missing copy means copy 1.
    pub fn parse_compact(graph: Arc<SftGraph>, s: &str) -> Result<PrefixTable, TfgError> {
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| TfgError::Parse(format!("expected braces around `{s}`")))?;
        let mut pairs = Vec::new();
        for chunk in body.split(')') {
            let chunk = chunk.trim().trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let inner = chunk
                .strip_prefix('(')
                .ok_or_else(|| TfgError::Parse(format!("expected `(` in `{chunk}`")))?;
            let (l, r) = inner
                .split_once('→')
                .or_else(|| inner.split_once("->"))
                .ok_or_else(|| TfgError::Parse(format!("expected an arrow in `{inner}`")))?;
            let side = |x: &str| -> Result<(u32, Word), TfgError> {
                match x.split_once(':') {
                    Some((c, w)) => Ok((
                        c.trim().parse().map_err(|_| TfgError::Parse(format!("bad copy index `{c}`")))?,
                        parse_compact(w)?,
                    )),
                    None => Ok((1, parse_compact(x)?)),
                }
            };
            let (cu, u) = side(l)?;
            let (cv, v) = side(r)?;
            pairs.push(Pair::new(cu, u, cv, v));
        }
        PrefixTable::new(graph, pairs)
    }
}

impl fmt::Display for PrefixTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.graph.compact_ids();
        let plain = self.pairs.iter().all(|p| p.cu == 1 && p.cv == 1);
        write!(f, "{{")?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let u = Compact { word: &p.u, digits };
            let v = Compact { word: &p.v, digits };
            if plain {
                write!(f, "({u}→{v})")?;
            } else {
                write!(f, "({}:{u}→{}:{v})", p.cu, p.cv)?;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::SftSpec;

    fn shift2() -> Arc<SftGraph> {
        Arc::new(SftGraph::new(SftSpec::from_rows(&[vec![2]]).unwrap()).unwrap())
    }

    fn t(s: &str) -> PrefixTable {
        PrefixTable::parse_compact(shift2(), s).unwrap()
    }

    #[test]
    fn documented_composition() {
        let sigma = t("{(0→1),(1→0)}");
        let tau = t("{(00→0),(01→10),(1→11)}");
        assert_eq!(sigma.compose(&tau).unwrap().to_string(), "{(00→1),(01→00),(1→01)}");
    }

    #[test]
    fn validation_examples() {
        assert!(validate(&shift2(), t("{(00→0),(01→10),(1→11)}").pairs(), 16).is_empty());
        match PrefixTable::parse_compact(shift2(), "{(0→0)}") {
            Err(TfgError::Invalid(d)) => {
                assert_eq!(d.len(), 2);
                assert!(d.iter().all(|x| x.kind == DiagnosticKind::Gap && x.witness == "1:1"));
            }
            other => panic!("expected a gap, got {other:?}"),
        }
        match PrefixTable::parse_compact(shift2(), "{(0→0),(01→1),(1→ε)}") {
            Err(TfgError::Invalid(d)) => {
                assert!(d.iter().any(|x| x.kind == DiagnosticKind::Overlap && x.witness == "1:01"));
            }
            other => panic!("expected an overlap, got {other:?}"),
        }
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(t("{(00→10),(01→11),(1→0)}").canonicalize().to_string(), "{(0→1),(1→0)}");
        assert_eq!(t("{(00→00),(01→01),(1→1)}").canonicalize().to_string(), "{(ε→ε)}");
        let tau = t("{(00→0),(01→10),(1→11)}");
        assert_eq!(tau.canonicalize().to_string(), tau.to_string());
    }

    #[test]
    fn equality_and_inverse() {
        let swap = t("{(0→1),(1→0)}");
        assert!(swap.equals(&t("{(00→10),(01→11),(1→0)}")));
        assert!(!swap.equals(&PrefixTable::identity(shift2(), [1])));
        assert!(swap.inverse().equals(&swap));
        let tau = t("{(00→0),(01→10),(1→11)}");
        assert_eq!(tau.inverse().to_string(), "{(0→00),(10→01),(11→1)}");
        assert!(tau.compose(&tau.inverse()).unwrap().is_identity());
        assert!(swap.compose(&swap).unwrap().is_identity());
    }

    #[test]
    fn zeta_witness_examples() {
        let g = shift2();
        let full = PrefixTable::zeta_witness(g.clone(), &[vec![]]).unwrap();
        assert_eq!(full.to_string(), "{(1:ε→2:ε),(2:ε→1:ε)}");
        let z0 = PrefixTable::zeta_witness(g.clone(), &[vec![0]]).unwrap();
        assert_eq!(z0.to_string(), "{(1:0→2:0),(1:1→1:1),(2:0→1:0),(2:1→2:1)}");
        assert_eq!(z0.order(10).unwrap(), Order::Finite { order: 2 });
    }

    #[test]
    fn embedding_and_commutators() {
        let g = shift2();
        let swap = t("{(0→1),(1→0)}");
        let big: BTreeSet<u32> = [1, 2].into();
        let e = swap.corner_embed(&big).unwrap();
        assert_eq!(e.to_string(), "{(1:0→1:1),(1:1→1:0),(2:ε→2:ε)}");
        assert!(e.equals(&swap));
        assert!(swap.corner_embed(&[2].into()).is_err());
        assert!(swap.commutator(&swap).unwrap().is_identity());
        // Disjoint supports: one acts inside Z(0), the other inside Z(1).
        let a = t("{(00→01),(01→00),(1→1)}");
        let b = t("{(0→0),(10→11),(11→10)}");
        assert!(a.commutator(&b).unwrap().is_identity());
        assert!(matches!(swap.compose(&PrefixTable::identity(g, [1, 2])), Err(TfgError::SupportMismatch { .. })));
    }

    #[test]
    fn infinite_order_hits_a_limit() {
        let tau = t("{(00→0),(01→10),(1→11)}");
        assert!(matches!(tau.order(8).unwrap(), Order::ExceedsCap { cap: 8 } | Order::DepthExceeded { .. }));
    }
}
