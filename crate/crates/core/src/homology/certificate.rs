//! Checkable witnesses of contractibility.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::complex::{is_central, Complex, Simplex};

use super::HomologyError;

/// Removal of a free face together with its unique proper coface.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ElementaryCollapse {
    pub free_face: Simplex,
    pub coface: Simplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ContractibilityCertificate {
    /// A simplex whose union with every simplex stays in the complex, so the
    /// complex is a cone.
    CentralSimplex(Simplex),
    /// Elementary collapses ending in a single vertex.
    CollapseSequence(Vec<ElementaryCollapse>),
    None,
}

impl ContractibilityCertificate {
    pub fn is_certificate(&self) -> bool {
        !matches!(self, ContractibilityCertificate::None)
    }

    /// Replays the certificate against `k`.
    pub fn verify(&self, k: &Complex) -> bool {
        match self {
            ContractibilityCertificate::None => false,
            ContractibilityCertificate::CentralSimplex(t) => {
                k.contains(t) && is_central(k, t).unwrap_or(false)
            }
            ContractibilityCertificate::CollapseSequence(steps) => {
                let Ok(all) = k.all_simplices() else {
                    return false;
                };
                let mut live: BTreeSet<Simplex> = all.into_iter().collect();
                for step in steps {
                    let ElementaryCollapse { free_face, coface } = step;
                    if coface.len() != free_face.len() + 1
                        || !free_face.is_subset_of(coface)
                        || !live.contains(coface)
                        || !live.contains(free_face)
                    {
                        return false;
                    }
                    let mut cofaces = live
                        .iter()
                        .filter(|s| s.len() > free_face.len() && free_face.is_subset_of(s));
                    if cofaces.next() != Some(coface) || cofaces.next().is_some() {
                        return false;
                    }
                    live.remove(coface);
                    live.remove(free_face);
                }
                live.len() == 1
            }
        }
    }
}

/// Looks for a central simplex, then for a greedy collapse to a vertex.
///
/// Returns `None` when neither is found; that does not imply the complex is
/// not contractible.
pub fn contractibility_certificate(
    k: &Complex,
) -> Result<ContractibilityCertificate, HomologyError> {
    if k.is_empty() {
        return Err(HomologyError::EmptyComplex);
    }
    let central: Vec<_> = k
        .vertices()
        .into_iter()
        .filter(|&v| is_central(k, &Simplex::vertex(v)).unwrap_or(false))
        .collect();
    if !central.is_empty() {
        // Central vertices are pairwise adjacent and jointly central.
        let tau = Simplex::new(central).expect("nonempty");
        debug_assert!(is_central(k, &tau).unwrap_or(false));
        return Ok(ContractibilityCertificate::CentralSimplex(tau));
    }
    match k.all_simplices() {
        Ok(all) => Ok(greedy_collapse(all)
            .map(ContractibilityCertificate::CollapseSequence)
            .unwrap_or(ContractibilityCertificate::None)),
        Err(_) => Ok(ContractibilityCertificate::None),
    }
}

fn greedy_collapse(all: Vec<Simplex>) -> Option<Vec<ElementaryCollapse>> {
    let mut live: BTreeSet<Simplex> = all.into_iter().collect();
    // Number of live codimension-one cofaces of each live simplex.
    let mut cofaces: BTreeMap<Simplex, usize> = live.iter().map(|s| (s.clone(), 0)).collect();
    for s in &live {
        for f in s.facets() {
            *cofaces.get_mut(&f).expect("closed under faces") += 1;
        }
    }
    let mut steps = Vec::new();
    while live.len() > 1 {
        let found = live.iter().rev().find_map(|sigma| {
            if cofaces[sigma] != 0 {
                return None;
            }
            sigma
                .facets()
                .find(|f| cofaces[f] == 1)
                .map(|f| (f, sigma.clone()))
        });
        let (tau, sigma) = found?;
        for f in sigma.facets() {
            *cofaces.get_mut(&f).expect("present") -= 1;
        }
        for f in tau.facets() {
            *cofaces.get_mut(&f).expect("present") -= 1;
        }
        live.remove(&sigma);
        live.remove(&tau);
        cofaces.remove(&sigma);
        cofaces.remove(&tau);
        steps.push(ElementaryCollapse {
            free_face: tau,
            coface: sigma,
        });
    }
    Some(steps)
}
