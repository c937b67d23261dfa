use std::fmt;

use super::TfgError;
use crate::models::{Edge, SftSpec};

/// A finite word of edge ids `x_1 x_2 … x_n`; the target of `x_{k+1}` is
/// the source of `x_k`.
pub type Word = Vec<u32>;

/// The graph of an SFT together with the lookups the word calculus needs.
#[derive(Clone, Debug)]
pub struct SftGraph {
    spec: SftSpec,
    edges: Vec<Edge>,
    /// `into[v]`: ids of edges with target `v`, ascending.
    into: Vec<Vec<u32>>,
    all: Vec<u32>,
}

impl PartialEq for SftGraph {
    fn eq(&self, other: &Self) -> bool {
        self.spec.matrix() == other.spec.matrix()
    }
}

impl Eq for SftGraph {}

impl SftGraph {
    /// Requires an irreducible graph that is not a permutation.
    pub fn new(spec: SftSpec) -> Result<Self, TfgError> {
        if !spec.is_irreducible() {
            return Err(TfgError::Hypothesis("adjacency matrix is reducible".into()));
        }
        if spec.is_permutation() {
            return Err(TfgError::Hypothesis("adjacency matrix is a permutation matrix".into()));
        }
        let edges = spec.edges().map_err(TfgError::Model)?;
        let mut into = vec![Vec::new(); spec.vertices()];
        for e in &edges {
            into[e.target].push(e.id as u32);
        }
        let all = (0..edges.len() as u32).collect();
        Ok(SftGraph { spec, edges, into, all })
    }

    pub fn spec(&self) -> &SftSpec {
        &self.spec
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: u32) -> &Edge {
        &self.edges[id as usize]
    }

    /// Edges that may follow `w`: all edges after the empty word, otherwise
    /// the edges whose target is the source of the last edge.
    pub fn follow(&self, w: &[u32]) -> &[u32] {
        match w.last() {
            None => &self.all,
            Some(&e) => &self.into[self.edges[e as usize].source],
        }
    }

    /// Words with the same follow set have the same cylinder shape.
    pub fn compatible(&self, u: &[u32], v: &[u32]) -> bool {
        self.follow(u) == self.follow(v)
    }

    pub fn check_word(&self, w: &[u32]) -> Result<(), String> {
        for (k, &e) in w.iter().enumerate() {
            if e as usize >= self.edges.len() {
                return Err(format!("edge {e} does not exist"));
            }
            if k > 0 && !self.follow(&w[..k]).contains(&e) {
                return Err(format!("edge {e} cannot follow edge {}", w[k - 1]));
            }
        }
        Ok(())
    }

    /// Appends edges while the follow set is a single edge, so that equal
    /// cylinders get equal words.
    pub fn normalize(&self, w: &mut Word) {
        loop {
            let f = self.follow(w);
            if f.len() != 1 {
                return;
            }
            w.push(f[0]);
        }
    }

    pub fn normalized(&self, mut w: Word) -> Word {
        self.normalize(&mut w);
        w
    }

    /// Normalized one-edge extensions of `w`.
    pub fn children(&self, w: &[u32]) -> Vec<Word> {
        self.follow(w)
            .iter()
            .map(|&e| {
                let mut c = w.to_vec();
                c.push(e);
                self.normalized(c)
            })
            .collect()
    }

    /// Single digits when every id is below 10, `e<id>` tokens otherwise.
    pub fn compact_ids(&self) -> bool {
        self.edges.len() <= 10
    }
}

/// Space-separated `e<id>` tokens; the empty word is the empty string.
pub fn format_word(w: &[u32]) -> String {
    w.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join(" ")
}

/// Accepts `e<id>` or plain ids separated by whitespace.
pub fn parse_word(s: &str) -> Result<Word, TfgError> {
    s.split_whitespace()
        .map(|tok| {
            let digits = tok.strip_prefix('e').unwrap_or(tok);
            digits.parse::<u32>().map_err(|_| TfgError::Parse(format!("bad edge token `{tok}` in word `{s}`")))
        })
        .collect()
}

/// Word notation used in compact table display.
pub(crate) struct Compact<'a> {
    pub word: &'a [u32],
    pub digits: bool,
}

impl fmt::Display for Compact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "ε");
        }
        if self.digits {
            for e in self.word {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.word.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join("."))
        }
    }
}

pub(crate) fn parse_compact(s: &str) -> Result<Word, TfgError> {
    let s = s.trim();
    if s.is_empty() || s == "ε" {
        return Ok(Vec::new());
    }
    if s.contains('e') {
        return s
            .split('.')
            .map(|t| {
                t.trim()
                    .strip_prefix('e')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| TfgError::Parse(format!("bad word `{s}`")))
            })
            .collect();
    }
    s.chars()
        .map(|c| c.to_digit(10).ok_or_else(|| TfgError::Parse(format!("bad word `{s}`"))))
        .collect()
}
