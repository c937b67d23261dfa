use super::HomologyError;
use crate::abelian::{tensor, tor, FgAbGroup};
use crate::graded::GradedAbGroup;

/// Künneth product of two finitely supported homologies.
pub fn kunneth(h1: &GradedAbGroup, h2: &GradedAbGroup) -> Result<GradedAbGroup, HomologyError> {
    for (side, h) in [("first", h1), ("second", h2)] {
        if !h.eventually_zero() {
            return Err(HomologyError::NonFiniteSupport(format!(
                "{side} factor is only known through degree {}",
                h.max_support().unwrap_or(0)
            )));
        }
    }
    let bound = h1.max_support().unwrap_or(0) + h2.max_support().unwrap_or(0) + 1;
    Ok(GradedAbGroup::finite(combine(h1, h2, bound), bound).expect("degrees within bound"))
}

/// Künneth product where either side may be truncated. The result is
/// known exactly as far as both inputs determine it.
pub fn kunneth_truncated(h1: &GradedAbGroup, h2: &GradedAbGroup) -> GradedAbGroup {
    match (h1.known_through(), h2.known_through()) {
        (None, None) => kunneth(h1, h2).expect("both finitely supported"),
        (a, b) => {
            let through = a.into_iter().chain(b).min().expect("at least one truncated side");
            GradedAbGroup::truncated(combine(h1, h2, through), through).expect("degrees within bound")
        }
    }
}

fn combine(h1: &GradedAbGroup, h2: &GradedAbGroup, through: usize) -> Vec<(usize, FgAbGroup)> {
    let mut out: Vec<(usize, FgAbGroup)> = Vec::new();
    for (&p, a) in h1.groups() {
        for (&q, b) in h2.groups() {
            if p + q <= through {
                out.push((p + q, tensor(a, b)));
            }
            if p + q < through {
                out.push((p + q + 1, tor(a, b)));
            }
        }
    }
    out
}
