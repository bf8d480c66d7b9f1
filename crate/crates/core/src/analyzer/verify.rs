//! Homological cross-check of verdicts: profiles of the pieces and the maps
//! induced by `U = K_X ∪ K_Y ⊆ K`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::{restriction, union, Complex, Cover};
use crate::homology::{
    computable_degree, homology, induced_map, Coefficients, Field, HomologyError, HomologyProfile,
};

use super::{
    map_fields, AnalysisOptions, Conclusion, CriterionVerdict, Discrepancy, DiscrepancyKind,
};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NamedProfile {
    /// One of `K_X`, `K_Y`, `K_A`, `U`, `K`.
    pub name: String,
    pub profile: HomologyProfile,
}

/// `H_d(U; F) → H_d(K; F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MapSummary {
    pub field: Field,
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl MapSummary {
    pub fn is_isomorphism(&self) -> bool {
        self.rank == self.source_dim && self.rank == self.target_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verification {
    pub max_degree: usize,
    /// Reduced homology, one entry per piece and coefficient choice.
    pub profiles: Vec<NamedProfile>,
    pub maps: Vec<MapSummary>,
}

impl Verification {
    pub fn profile(&self, name: &str, coefficients: Coefficients) -> Option<&HomologyProfile> {
        self.profiles
            .iter()
            .find(|p| p.name == name && p.profile.coefficients == coefficients)
            .map(|p| &p.profile)
    }

    pub fn map(&self, field: Field, degree: usize) -> Option<&MapSummary> {
        self.maps
            .iter()
            .find(|m| m.field == field && m.degree == degree)
    }
}

pub(super) fn run(
    k: &Complex,
    cover: &Cover,
    options: &AnalysisOptions,
) -> Result<Verification, HomologyError> {
    // Above the top dimension of a complete complex every group is zero.
    let max_degree = match computable_degree(k) {
        Some(d) if !k.is_fully_enumerable() => d.min(options.dim_cap),
        _ => options.dim_cap,
    };
    let kx = restriction(k, cover.x());
    let ky = restriction(k, cover.y());
    let ka = restriction(k, cover.a());
    let u = union(&kx, &ky);
    let pieces = [
        ("K_X", &kx),
        ("K_Y", &ky),
        ("K_A", &ka),
        ("U", &u),
        ("K", k),
    ];
    let mut profiles = Vec::new();
    for &coefficients in &options.coefficients {
        for (name, c) in pieces {
            profiles.push(NamedProfile {
                name: name.into(),
                profile: homology(c, coefficients, max_degree, true)?,
            });
        }
    }
    let mut maps = Vec::new();
    for field in map_fields(&options.coefficients) {
        for degree in 0..=max_degree {
            let m = induced_map(&u, k, degree, field)?;
            maps.push(MapSummary {
                field,
                degree,
                source_dim: m.source_dim,
                target_dim: m.target_dim,
                rank: m.rank,
            });
        }
    }
    Ok(Verification {
        max_degree,
        profiles,
        maps,
    })
}

/// Isomorphism through `iso` (all degrees when `None`), onto one above.
struct Shadow {
    iso: Option<usize>,
    excluded_characteristic: Option<u64>,
}

fn shadow(c: &Conclusion) -> Option<Shadow> {
    match *c {
        Conclusion::None => None,
        Conclusion::WeakEquivalence | Conclusion::HomologyIsomorphism => Some(Shadow {
            iso: None,
            excluded_characteristic: None,
        }),
        Conclusion::ConnectedFibers { n } => Some(Shadow {
            iso: Some(n),
            excluded_characteristic: None,
        }),
        Conclusion::ModPrimeIsomorphism { p, through } => Some(Shadow {
            iso: through,
            excluded_characteristic: Some(p),
        }),
    }
}

/// Conclusions contradicted by `v`.
pub(super) fn audit(verdicts: &[CriterionVerdict], v: &Verification) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for verdict in verdicts {
        let Some(s) = shadow(&verdict.conclusion) else {
            continue;
        };
        let mut flag = |detail: String| {
            out.push(Discrepancy {
                kind: DiscrepancyKind::Soundness,
                criterion: Some(verdict.criterion),
                detail,
            })
        };
        for m in &v.maps {
            if s.excluded_characteristic == Some(m.field.characteristic()) {
                continue;
            }
            let needs_iso = s.iso.is_none_or(|n| m.degree <= n);
            let needs_onto = s.iso.is_some_and(|n| m.degree == n + 1);
            let what = if needs_iso && !m.is_isomorphism() {
                "not an isomorphism"
            } else if needs_onto && !m.is_surjective() {
                "not surjective"
            } else {
                continue;
            };
            flag(format!(
                "H_{}(U;{}) → H_{}(K;{}) has rank {} from dimension {} to {}: {what}",
                m.degree, m.field, m.degree, m.field, m.rank, m.source_dim, m.target_dim
            ));
        }
        // Integral groups must agree wherever the map is an isomorphism.
        if s.excluded_characteristic.is_none() {
            let (Some(pu), Some(pk)) = (
                v.profile("U", Coefficients::Integers),
                v.profile("K", Coefficients::Integers),
            ) else {
                continue;
            };
            let top = s.iso.map_or(v.max_degree, |n| n.min(v.max_degree));
            if let Some(d) = (0..=top).find(|&d| pu.group(d) != pk.group(d)) {
                flag(format!(
                    "H~_{d}(U;Z) = {} but H~_{d}(K;Z) = {}",
                    pu.group(d),
                    pk.group(d)
                ));
            }
        }
    }
    out
}
