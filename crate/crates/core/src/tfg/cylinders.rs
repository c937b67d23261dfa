use std::collections::BTreeSet;
use std::fmt;

use super::graph::{Compact, SftGraph, Word};
use super::TfgError;

/// A cylinder `{copy} × Z(word)` in the amplified path space.
pub type Piece = (u32, Word);

/// Parent of a normalized nonempty word in the cylinder tree: the longest
/// proper prefix with at least two continuations, and the edge taken there.
pub(crate) fn parent(g: &SftGraph, w: &[u32]) -> Option<(Word, u32)> {
    (0..w.len()).rev().find(|&i| g.follow(&w[..i]).len() >= 2).map(|i| (w[..i].to_vec(), w[i]))
}

/// A compact open subset of the amplified path space, stored as its
/// canonical antichain of normalized cylinders: no piece contains another
/// and no complete family of siblings is left uncollapsed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CylinderSet {
    pieces: BTreeSet<Piece>,
}

impl CylinderSet {
    pub fn empty() -> Self {
        CylinderSet { pieces: BTreeSet::new() }
    }

    /// The whole path space on each listed copy.
    pub fn full_copies<I: IntoIterator<Item = u32>>(copies: I) -> Self {
        CylinderSet {
            pieces: copies.into_iter().map(|c| (c, Vec::new())).collect(),
        }
    }

    /// Union of arbitrary (possibly overlapping) cylinders.
    pub fn new<I: IntoIterator<Item = Piece>>(g: &SftGraph, pieces: I) -> Result<Self, TfgError> {
        let mut all: Vec<Piece> = Vec::new();
        for (c, w) in pieces {
            g.check_word(&w).map_err(|reason| TfgError::BadWord {
                word: super::graph::format_word(&w),
                reason,
            })?;
            all.push((c, g.normalized(w)));
        }
        all.sort();
        all.dedup();
        // Drop pieces inside another piece; sorted order puts prefixes first.
        let mut kept: Vec<Piece> = Vec::new();
        for p in all {
            if !kept.iter().any(|(c, w)| *c == p.0 && p.1.starts_with(w)) {
                kept.push(p);
            }
        }
        Ok(Self::collapsed(g, kept.into_iter().collect()))
    }

    fn collapsed(g: &SftGraph, mut pieces: BTreeSet<Piece>) -> Self {
        loop {
            let family = pieces.iter().find_map(|(c, w)| {
                let (p, _) = parent(g, w)?;
                let kids = g.children(&p);
                kids.iter().all(|k| pieces.contains(&(*c, k.clone()))).then_some((*c, p, kids))
            });
            let Some((c, p, kids)) = family else { break };
            for k in kids {
                pieces.remove(&(c, k));
            }
            pieces.insert((c, p));
        }
        CylinderSet { pieces }
    }

    pub fn pieces(&self) -> &BTreeSet<Piece> {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn copies(&self) -> BTreeSet<u32> {
        self.pieces.iter().map(|(c, _)| *c).collect()
    }

    /// Cylinders covering `self ∖ other`, as a canonical set.
    pub fn difference(&self, g: &SftGraph, other: &CylinderSet) -> CylinderSet {
        let mut out = BTreeSet::new();
        for (c, w) in &self.pieces {
            subtract(g, *c, w.clone(), &other.pieces, &mut out);
        }
        Self::collapsed(g, out)
    }

    pub fn is_subset(&self, g: &SftGraph, other: &CylinderSet) -> bool {
        self.difference(g, other).is_empty()
    }

    pub fn union(&self, g: &SftGraph, other: &CylinderSet) -> CylinderSet {
        let extra = other.difference(g, self);
        let mut all = self.pieces.clone();
        all.extend(extra.pieces.iter().cloned());
        Self::collapsed(g, all)
    }
}

/// Pieces of `{c} × Z(w)` not covered by `holes`.
pub(crate) fn subtract(g: &SftGraph, c: u32, w: Word, holes: &BTreeSet<Piece>, out: &mut BTreeSet<Piece>) {
    let same_copy = || holes.range((c, Vec::new())..(c + 1, Vec::new()));
    if same_copy().any(|(_, h)| w.starts_with(h)) {
        return;
    }
    if !same_copy().any(|(_, h)| h.starts_with(&w)) {
        out.insert((c, w));
        return;
    }
    for k in g.children(&w) {
        subtract(g, c, k, holes, out);
    }
}

impl CylinderSet {
    pub fn display<'a>(&'a self, g: &'a SftGraph) -> impl fmt::Display + 'a {
        DisplaySet { set: self, digits: g.compact_ids() }
    }
}

struct DisplaySet<'a> {
    set: &'a CylinderSet,
    digits: bool,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (c, w)) in self.set.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}:{}", Compact { word: w, digits: self.digits })?;
        }
        write!(f, "}}")
    }
}
