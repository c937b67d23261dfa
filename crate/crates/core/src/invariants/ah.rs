use serde::{Deserialize, Serialize};

use crate::abelian::{mod2, FgAbGroup};
use crate::graded::GradedAbGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AhVerdict {
    /// `H_1(F(G))` up to isomorphism.
    Determined { h1_full: FgAbGroup },
    /// `0 → kernel → H_1(F(G)) → quotient → 0` is exact but the extension
    /// class is not determined.
    ExtensionAmbiguous { kernel: FgAbGroup, quotient: FgAbGroup },
    /// `H_2(G) → H_0(G, Z/2)` may be nonzero. The image of `ζ` is
    /// `(Z/2)^s` with `image_dim_min ≤ s ≤ image_dim_max`.
    ConnectingMapUnknown {
        kernel_source: FgAbGroup,
        quotient: FgAbGroup,
        image_dim_min: usize,
        image_dim_max: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrongAh {
    Holds,
    Fails,
    Undetermined,
}

/// The low-degree exact sequence
/// `H_2(G) → H_0(G, Z/2) →ζ H_1(F(G)) →η H_1(G) → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AhResolution {
    /// `None` when the input does not determine `H_2(G)`.
    pub h2: Option<FgAbGroup>,
    pub h0_mod2: FgAbGroup,
    pub h1: FgAbGroup,
    pub verdict: AhVerdict,
    pub strong_ah: StrongAh,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<String>,
    pub summary: String,
}

pub fn ah_resolve(h: &GradedAbGroup) -> AhResolution {
    let h2 = h.try_get(2);
    let h1 = h.try_get(1).unwrap_or_default();
    let h0_mod2 = mod2(&h.get(0));
    let zeta_source = h0_mod2.mod2_dimension();
    let map_is_zero = zeta_source == 0 || h2.as_ref().is_some_and(FgAbGroup::is_trivial);
    if map_is_zero {
        let verdict = if h1.is_free() || h0_mod2.is_trivial() {
            AhVerdict::Determined {
                h1_full: h1.direct_sum(&h0_mod2),
            }
        } else {
            AhVerdict::ExtensionAmbiguous {
                kernel: h0_mod2.clone(),
                quotient: h1.clone(),
            }
        };
        let summary = match &verdict {
            AhVerdict::Determined { h1_full } => format!(
                "H_2(G) -> H_0(G, Z/2) is zero, so zeta is injective and H_1(F(G)) = {h1_full}"
            ),
            _ => format!(
                "H_2(G) -> H_0(G, Z/2) is zero; H_1(F(G)) is an extension of {h1} by {h0_mod2} whose class is not determined"
            ),
        };
        return AhResolution {
            h2,
            h0_mod2,
            h1,
            verdict,
            strong_ah: StrongAh::Holds,
            criterion: None,
            summary,
        };
    }
    // Any map to an elementary abelian 2-group factors through H_2(G) ⊗ Z/2.
    let source_dim = h2.as_ref().map_or(zeta_source, |g| g.mod2_dimension());
    let image_dim_min = zeta_source - source_dim.min(zeta_source);
    let summary = match &h2 {
        Some(g) => format!(
            "H_2(G) = {g} and H_0(G, Z/2) = {h0_mod2} are both nonzero; the connecting map is not determined, \
             H_1(F(G)) is an extension of {h1} by a quotient of {h0_mod2}"
        ),
        None => format!(
            "H_2(G) is not known; H_1(F(G)) is an extension of {h1} by a quotient of {h0_mod2}"
        ),
    };
    AhResolution {
        h2,
        verdict: AhVerdict::ConnectingMapUnknown {
            kernel_source: h0_mod2.clone(),
            quotient: h1.clone(),
            image_dim_min,
            image_dim_max: zeta_source,
        },
        h0_mod2,
        h1,
        strong_ah: StrongAh::Undetermined,
        criterion: Some(
            "the strong AH property holds if and only if the map H_2(G) -> H_0(G, Z/2) in the exact sequence is zero"
                .to_string(),
        ),
        summary,
    }
}

/// Dynamical hypotheses the user asserts about `G`. They are never inferred.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Declarations {
    pub minimal: bool,
    pub comparison: bool,
    pub no_isolated_points: bool,
}

impl Declarations {
    /// Parses a comma-separated list of `minimal`, `comparison`,
    /// `no-isolated-points`.
    pub fn parse_list(s: &str) -> Result<Self, String> {
        let mut d = Declarations::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match item {
                "minimal" => d.minimal = true,
                "comparison" => d.comparison = true,
                "no-isolated-points" => d.no_isolated_points = true,
                other => return Err(format!("unknown declaration `{other}`")),
            }
        }
        Ok(d)
    }

    pub fn missing(&self) -> Vec<&'static str> {
        let mut m = Vec::new();
        if !self.minimal {
            m.push("minimal");
        }
        if !self.comparison {
            m.push("comparison");
        }
        if !self.no_isolated_points {
            m.push("no-isolated-points");
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Conclusions hold for `F(G)` itself.
    FullGroup,
    /// Conclusions hold for the amplified group `F(R × G)` only.
    AmplifiedOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmplifiedNote {
    pub scope: Scope,
    pub applies_to: &'static str,
    pub declared: Declarations,
    pub missing: Vec<&'static str>,
    pub strong_ah: StrongAh,
    pub note: String,
}

pub fn amplified_note(resolution: &AhResolution, declared: &Declarations) -> AmplifiedNote {
    let missing = declared.missing();
    let (scope, applies_to) = if missing.is_empty() {
        (Scope::FullGroup, "F(G)")
    } else {
        (Scope::AmplifiedOnly, "F(R x G)")
    };
    let note = match scope {
        Scope::FullGroup => "G is declared minimal with comparison and no isolated points; \
                             the conclusions hold for F(G)"
            .to_string(),
        Scope::AmplifiedOnly => format!(
            "not declared: {}; the conclusions hold unconditionally for the amplified group F(R x G)",
            missing.join(", ")
        ),
    };
    AmplifiedNote {
        scope,
        applies_to,
        declared: *declared,
        missing,
        strong_ah: resolution.strong_ah,
        note,
    }
}
