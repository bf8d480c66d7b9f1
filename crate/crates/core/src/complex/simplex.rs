use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::ComplexError;

/// Interned vertex identifier.
pub type VertexId = u32;

/// A set of vertex identifiers, ordered.
pub type VertexSet = BTreeSet<VertexId>;

/// A nonempty, strictly increasing list of vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")
)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from arbitrary vertices, sorting and deduplicating them.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Simplex(vertices))
    }

    /// Wraps an already strictly increasing, nonempty vertex list.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(alloc::vec![v])
    }

    pub fn edge(a: VertexId, b: VertexId) -> Result<Self, ComplexError> {
        Simplex::new(alloc::vec![a, b])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn is_within(&self, set: &VertexSet) -> bool {
        self.0.iter().all(|v| set.contains(v))
    }

    pub fn meets(&self, set: &VertexSet) -> bool {
        self.0.iter().any(|v| set.contains(v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                core::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Simplex(out)
    }

    pub fn with_vertex(&self, v: VertexId) -> Simplex {
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v);
                Simplex(out)
            }
        }
    }

    /// Vertices of `self` lying in `set`, or `None` when there are none.
    pub fn restrict_to(&self, set: &VertexSet) -> Option<Simplex> {
        let kept: Vec<_> = self.0.iter().copied().filter(|v| set.contains(v)).collect();
        if kept.is_empty() {
            None
        } else {
            Some(Simplex(kept))
        }
    }

    /// Codimension-one faces in the order `[v1..], [v0, v2..], ...`; empty for a vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, v)| *v)
                    .collect(),
            )
        })
    }

    /// Every nonempty subset, including `self`.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out = Vec::with_capacity((1usize << n.min(20)) - 1);
        for mask in 1u64..(1u64 << n) {
            let face: Vec<_> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.0[i])
                .collect();
            out.push(Simplex(face));
        }
        out
    }

    pub fn to_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl TryFrom<Vec<VertexId>> for Simplex {
    type Error = ComplexError;

    fn try_from(value: Vec<VertexId>) -> Result<Self, Self::Error> {
        Simplex::new(value)
    }
}

impl From<Simplex> for Vec<VertexId> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn new_sorts_and_dedups() {
        let s = Simplex::new(vec![3, 1, 3, 2]).unwrap();
        assert_eq!(s.vertices(), &[1, 2, 3]);
        assert_eq!(s.dim(), 2);
        assert_eq!(Simplex::new(vec![]), Err(ComplexError::EmptySimplex));
    }

    #[test]
    fn facets_drop_one_vertex_each() {
        let s = Simplex::new(vec![1, 2, 3]).unwrap();
        let f: Vec<_> = s.facets().map(|f| f.vertices().to_vec()).collect();
        assert_eq!(f, vec![vec![2, 3], vec![1, 3], vec![1, 2]]);
        assert_eq!(Simplex::vertex(4).facets().count(), 0);
    }

    #[test]
    fn union_and_faces() {
        let a = Simplex::new(vec![1, 4]).unwrap();
        let b = Simplex::new(vec![2, 4]).unwrap();
        assert_eq!(a.union(&b).vertices(), &[1, 2, 4]);
        assert_eq!(a.union(&b).faces().len(), 7);
        assert_eq!(a.with_vertex(3).vertices(), &[1, 3, 4]);
    }
}
