//! Invariants of topological full groups read off from groupoid homology.
//!
//! Every function here takes the homology `H_*(G)` as input. Rational
//! homology and Poincaré series of `F(G)` and `D(G)`, the vanishing
//! ladder, and the low-degree exact sequence
//! `H_2(G) → H_0(G, Z/2) → H_1(F(G)) → H_1(G) → 0` are derived from it.

mod ah;
mod vanishing;

use crate::graded::{ext_sym_dims, rationalize, GradedAbGroup, GradedDims};

pub use ah::{ah_resolve, amplified_note, AhResolution, AhVerdict, AmplifiedNote, Declarations, Scope, StrongAh};
pub use vanishing::{vanishing_report, Conclusion, LowestDegree, VanishingVerdict};

/// Rational homology dimensions of `F(G)` in degrees `0..=n`: exterior
/// algebra on the odd positive degrees tensored with the symmetric algebra
/// on the even positive degrees of `H_*(G, Q)`.
pub fn rational_full(h: &GradedAbGroup, n: usize) -> GradedDims {
    let d = rationalize(h);
    ext_sym_dims(&d.odd_part(), &d.even_positive_part(), n).expect("parts have the right parity")
}

/// Rational homology dimensions of `D(G)`: as [`rational_full`] with the
/// degree-1 generators removed.
pub fn rational_derived(h: &GradedAbGroup, n: usize) -> GradedDims {
    let d = rationalize(h);
    let odd = d.odd_part().restrict(|j| j > 1);
    ext_sym_dims(&odd, &d.even_positive_part(), n).expect("parts have the right parity")
}

/// Last degree through which the series above are exact. Degree `j` only
/// depends on `H_i` for `i ≤ j`, so a truncated input limits the range.
pub fn series_exact_through(h: &GradedAbGroup, n: usize) -> usize {
    h.known_through().map_or(n, |k| k.min(n))
}
