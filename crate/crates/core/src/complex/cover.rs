use alloc::format;
use alloc::vec::Vec;

use super::{obstruction, Complex, ComplexError, Simplex, VertexSet};
use crate::homology::{
    computable_degree, contractibility_certificate, homology, Coefficients,
    ContractibilityCertificate, ElementaryCollapse, HomologyError, HomologyProfile,
};

/// Two vertex sets `X`, `Y` covering a complex, with `A = X ∩ Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Cover {
    x: VertexSet,
    y: VertexSet,
    a: VertexSet,
}

impl Cover {
    /// Requires `X ∪ Y` to be exactly the vertex set of `k`.
    pub fn new(k: &Complex, x: VertexSet, y: VertexSet) -> Result<Self, ComplexError> {
        let verts = k.vertices();
        if let Some(v) = x.iter().chain(&y).find(|v| !verts.contains(v)) {
            return Err(ComplexError::CoverError(format!(
                "vertex {v} is not a vertex of the complex"
            )));
        }
        if let Some(v) = verts.iter().find(|v| !x.contains(v) && !y.contains(v)) {
            return Err(ComplexError::CoverError(format!(
                "vertex {v} lies in neither X nor Y"
            )));
        }
        Ok(Self::unchecked(x, y))
    }

    /// A cover of `X ∪ Y` itself.
    pub fn unchecked(x: VertexSet, y: VertexSet) -> Self {
        let a = x.intersection(&y).copied().collect();
        Cover { x, y, a }
    }

    pub fn x(&self) -> &VertexSet {
        &self.x
    }

    pub fn y(&self) -> &VertexSet {
        &self.y
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    /// `X \ A`.
    pub fn x_only(&self) -> VertexSet {
        self.x.difference(&self.a).copied().collect()
    }

    /// `Y \ A`.
    pub fn y_only(&self) -> VertexSet {
        self.y.difference(&self.a).copied().collect()
    }

    /// Whether `σ` meets `X` and `Y` but not `A`, i.e. `σ ∈ K \ P`.
    pub fn is_cross(&self, sigma: &Simplex) -> bool {
        sigma.meets(&self.x) && sigma.meets(&self.y) && !sigma.meets(&self.a)
    }
}

/// What is known about an obstruction complex.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ObstructionStatus {
    Empty,
    /// Certified contractible by a central simplex.
    ConeCertified(Simplex),
    /// Certified contractible by elementary collapses.
    CollapseCertified(Vec<ElementaryCollapse>),
    /// No certificate; reduced integral homology through the computable
    /// range, if any.
    HomologyOnly(Option<HomologyProfile>),
}

impl ObstructionStatus {
    pub fn is_certified_contractible(&self) -> bool {
        matches!(
            self,
            ObstructionStatus::ConeCertified(_) | ObstructionStatus::CollapseCertified(_)
        )
    }

    pub fn classify(obs: &Complex) -> Result<Self, HomologyError> {
        if obs.is_empty() {
            return Ok(ObstructionStatus::Empty);
        }
        Ok(match contractibility_certificate(obs)? {
            ContractibilityCertificate::CentralSimplex(t) => ObstructionStatus::ConeCertified(t),
            ContractibilityCertificate::CollapseSequence(c) => {
                ObstructionStatus::CollapseCertified(c)
            }
            ContractibilityCertificate::None => {
                ObstructionStatus::HomologyOnly(match computable_degree(obs) {
                    Some(d) => Some(homology(obs, Coefficients::Integers, d, true)?),
                    None => None,
                })
            }
        })
    }
}

/// A simplex of `K \ P` with its obstruction complex `St(σ, A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PComplementItem {
    pub simplex: Simplex,
    pub obstruction: Complex,
    pub status: ObstructionStatus,
}

/// Every `σ ∈ K \ P` with `dim σ <= dim_cap`, lexicographically ordered.
pub fn enumerate_p_complement(
    k: &Complex,
    cover: &Cover,
    dim_cap: usize,
) -> Result<Vec<PComplementItem>, HomologyError> {
    cross_simplices(k, cover, dim_cap)?
        .into_iter()
        .map(|simplex| {
            let obs = obstruction(k, &simplex, cover.a())?;
            let status = ObstructionStatus::classify(&obs)?;
            Ok(PComplementItem {
                simplex,
                obstruction: obs,
                status,
            })
        })
        .collect()
}

/// The simplices of `K \ P` up to `dim_cap`, without obstruction data.
fn cross_simplices(
    k: &Complex,
    cover: &Cover,
    dim_cap: usize,
) -> Result<Vec<Simplex>, ComplexError> {
    let outside_a: VertexSet = k.vertices().difference(cover.a()).copied().collect();
    let candidates = match k {
        Complex::Flag(f) => {
            if let Some(limit) = k.enumeration_limit() {
                if dim_cap > limit {
                    return Err(ComplexError::EnumerationRefused {
                        requested: dim_cap,
                        limit,
                    });
                }
            }
            f.cliques_within(&outside_a, dim_cap + 1)
        }
        Complex::Explicit(_) => k
            .simplices_up_to(dim_cap)?
            .into_iter()
            .filter(|s| s.is_within(&outside_a))
            .collect(),
    };
    Ok(candidates
        .into_iter()
        .filter(|s| cover.is_cross(s))
        .collect())
}
