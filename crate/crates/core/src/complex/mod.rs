//! Finite abstract simplicial complexes.
//!
//! A [`Complex`] is stored either as an explicit, downward-closed set of
//! simplices or as a flag (clique) complex given by its 1-skeleton. Flag
//! complexes answer membership for simplices of any size but only enumerate
//! simplices up to their dimension cap.

mod cover;
mod ops;
mod simplex;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

pub use cover::{enumerate_p_complement, Cover, ObstructionStatus, PComplementItem};
pub use ops::{
    intersection, is_central, is_subcomplex, join, obstruction, restriction, skeleton, star, union,
};
pub use simplex::{Simplex, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("simplices must be nonempty")]
    EmptySimplex,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0:?} is not a simplex of the complex")]
    NotASimplex(Simplex),
    #[error("join requires disjoint vertex sets (shared vertex {0})")]
    JoinOverlap(VertexId),
    #[error("{0:?} is not contained in the ambient complex")]
    NotASubcomplex(Simplex),
    #[error("enumeration up to dimension {requested} refused: simplices are only known up to dimension {limit}")]
    EnumerationRefused { requested: usize, limit: usize },
    #[error("cover is invalid: {0}")]
    CoverError(String),
}

/// Explicit complex: every simplex is stored.
///
/// `truncated_above = Some(c)` records that the set was materialised from a
/// source that only enumerated simplices up to dimension `c`; simplices of
/// larger dimension may be missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitComplex {
    simplices: BTreeSet<Simplex>,
    truncated_above: Option<usize>,
}

/// Clique complex of a graph with a cap on enumerated dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagComplex {
    adjacency: BTreeMap<VertexId, VertexSet>,
    dim_cap: usize,
    /// No clique has more than `dim_cap + 1` vertices.
    complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Complex {
    Explicit(ExplicitComplex),
    Flag(FlagComplex),
}

impl ExplicitComplex {
    /// Closes `simplices` downward.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(
        simplices: I,
        truncated_above: Option<usize>,
    ) -> Self {
        let mut set = BTreeSet::new();
        for s in simplices {
            if set.contains(&s) {
                continue;
            }
            for face in s.faces() {
                set.insert(face);
            }
        }
        ExplicitComplex {
            simplices: set,
            truncated_above,
        }
    }

    /// Wraps a set already known to be downward closed.
    pub(crate) fn from_closed(
        simplices: BTreeSet<Simplex>,
        truncated_above: Option<usize>,
    ) -> Self {
        ExplicitComplex {
            simplices,
            truncated_above,
        }
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn truncated_above(&self) -> Option<usize> {
        self.truncated_above
    }
}

impl FlagComplex {
    pub fn new(adjacency: BTreeMap<VertexId, VertexSet>, dim_cap: usize) -> Self {
        let mut flag = FlagComplex {
            adjacency,
            dim_cap,
            complete: false,
        };
        let all = flag.vertex_set();
        flag.complete = !flag.has_clique_within(&all, dim_cap + 2);
        flag
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn neighbors(&self, v: VertexId) -> Option<&VertexSet> {
        self.adjacency.get(&v)
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.adjacency
            .iter()
            .flat_map(|(&a, n)| n.range(a + 1..).map(move |&b| (a, b)))
            .collect()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adjacency.keys().copied().collect()
    }

    pub fn is_clique(&self, vertices: &[VertexId]) -> bool {
        if !vertices.iter().all(|v| self.adjacency.contains_key(v)) {
            return false;
        }
        vertices
            .iter()
            .enumerate()
            .all(|(i, a)| vertices[i + 1..].iter().all(|b| self.adjacent(*a, *b)))
    }

    /// Vertices outside `sigma` adjacent to every vertex of `sigma`.
    pub fn common_neighbors(&self, sigma: &Simplex) -> VertexSet {
        let mut iter = sigma.vertices().iter();
        let first = match iter.next().and_then(|v| self.adjacency.get(v)) {
            Some(n) => n.clone(),
            None => return VertexSet::new(),
        };
        iter.fold(first, |acc, v| match self.adjacency.get(v) {
            Some(n) => acc.intersection(n).copied().collect(),
            None => VertexSet::new(),
        })
    }

    /// Cliques with at most `max_size` vertices inside `allowed`, in lexicographic order.
    pub fn cliques_within(&self, allowed: &VertexSet, max_size: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for &v in allowed {
            if !self.adjacency.contains_key(&v) {
                continue;
            }
            let cands: Vec<_> = self.adjacency[&v]
                .range(v + 1..)
                .copied()
                .filter(|w| allowed.contains(w))
                .collect();
            stack.push(v);
            self.extend_cliques(&mut stack, &cands, max_size, &mut |c| {
                out.push(Simplex::from_sorted(c.to_vec()));
                true
            });
            stack.pop();
        }
        out
    }

    /// Whether some clique inside `allowed` has exactly `size` vertices.
    pub fn has_clique_within(&self, allowed: &VertexSet, size: usize) -> bool {
        if size == 0 {
            return true;
        }
        let mut found = false;
        let mut stack = Vec::new();
        for &v in allowed {
            if !self.adjacency.contains_key(&v) {
                continue;
            }
            let cands: Vec<_> = self.adjacency[&v]
                .range(v + 1..)
                .copied()
                .filter(|w| allowed.contains(w))
                .collect();
            stack.push(v);
            self.extend_cliques(&mut stack, &cands, size, &mut |c| {
                if c.len() == size {
                    found = true;
                    return false;
                }
                true
            });
            stack.pop();
            if found {
                return true;
            }
        }
        found
    }

    // Depth-first clique extension; `visit` returns false to stop.
    fn extend_cliques(
        &self,
        stack: &mut Vec<VertexId>,
        candidates: &[VertexId],
        max_size: usize,
        visit: &mut dyn FnMut(&[VertexId]) -> bool,
    ) -> bool {
        if !visit(stack) {
            return false;
        }
        if stack.len() >= max_size {
            return true;
        }
        for (i, &w) in candidates.iter().enumerate() {
            let n = &self.adjacency[&w];
            let next: Vec<_> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|u| n.contains(u))
                .collect();
            stack.push(w);
            let go_on = self.extend_cliques(stack, &next, max_size, visit);
            stack.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    pub(crate) fn restricted(&self, keep: &VertexSet) -> FlagComplex {
        let adjacency = self
            .adjacency
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, n)| (v, n.intersection(keep).copied().collect()))
            .collect();
        FlagComplex::new(adjacency, self.dim_cap)
    }
}

impl Complex {
    /// The empty complex.
    pub fn empty() -> Self {
        Complex::Explicit(ExplicitComplex::from_closed(BTreeSet::new(), None))
    }

    /// Downward closure of the given facets.
    pub fn from_facets<I, F>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = VertexId>,
    {
        let simplices = facets
            .into_iter()
            .map(|f| Simplex::new(f.into_iter().collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Complex::Explicit(ExplicitComplex::from_simplices(
            simplices, None,
        )))
    }

    /// The full simplex Δ[vertices]; empty when `vertices` is.
    pub fn full_simplex<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        let v: Vec<_> = vertices.into_iter().collect();
        match Simplex::new(v) {
            Ok(s) => Complex::Explicit(ExplicitComplex::from_simplices([s], None)),
            Err(_) => Complex::empty(),
        }
    }

    /// Clique complex of the graph on `vertices` with the given edges.
    pub fn flag<V, E>(vertices: V, edges: E, dim_cap: usize) -> Self
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adjacency: BTreeMap<VertexId, VertexSet> = vertices
            .into_iter()
            .map(|v| (v, VertexSet::new()))
            .collect();
        for (a, b) in edges {
            if a == b {
                continue;
            }
            adjacency.entry(a).or_default().insert(b);
            adjacency.entry(b).or_default().insert(a);
        }
        Complex::Flag(FlagComplex::new(adjacency, dim_cap))
    }

    pub fn as_flag(&self) -> Option<&FlagComplex> {
        match self {
            Complex::Flag(f) => Some(f),
            Complex::Explicit(_) => None,
        }
    }

    pub fn is_flag(&self) -> bool {
        matches!(self, Complex::Flag(_))
    }

    pub fn vertices(&self) -> VertexSet {
        match self {
            Complex::Explicit(e) => e
                .simplices
                .iter()
                .filter(|s| s.len() == 1)
                .map(|s| s.vertices()[0])
                .collect(),
            Complex::Flag(f) => f.vertex_set(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Complex::Explicit(e) => e.simplices.is_empty(),
            Complex::Flag(f) => f.adjacency.is_empty(),
        }
    }

    pub fn contains(&self, sigma: &Simplex) -> bool {
        match self {
            Complex::Explicit(e) => e.simplices.contains(sigma),
            Complex::Flag(f) => f.is_clique(sigma.vertices()),
        }
    }

    /// `None` when every simplex can be enumerated, otherwise the largest
    /// dimension that can.
    pub fn enumeration_limit(&self) -> Option<usize> {
        match self {
            Complex::Explicit(e) => e.truncated_above,
            Complex::Flag(f) if f.complete => None,
            Complex::Flag(f) => Some(f.dim_cap),
        }
    }

    pub fn is_fully_enumerable(&self) -> bool {
        self.enumeration_limit().is_none()
    }

    fn check_limit(&self, requested: usize) -> Result<(), ComplexError> {
        match self.enumeration_limit() {
            Some(limit) if requested > limit => {
                Err(ComplexError::EnumerationRefused { requested, limit })
            }
            _ => Ok(()),
        }
    }

    /// Simplices of dimension `d`, lexicographically sorted.
    pub fn simplices_of_dim(&self, d: usize) -> Result<Vec<Simplex>, ComplexError> {
        self.check_limit(d)?;
        Ok(match self {
            Complex::Explicit(e) => e
                .simplices
                .iter()
                .filter(|s| s.dim() == d)
                .cloned()
                .collect(),
            Complex::Flag(f) => f
                .cliques_within(&f.vertex_set(), d + 1)
                .into_iter()
                .filter(|s| s.dim() == d)
                .collect(),
        })
    }

    /// Simplices of dimension at most `d`, lexicographically sorted.
    pub fn simplices_up_to(&self, d: usize) -> Result<Vec<Simplex>, ComplexError> {
        self.check_limit(d)?;
        Ok(match self {
            Complex::Explicit(e) => e
                .simplices
                .iter()
                .filter(|s| s.dim() <= d)
                .cloned()
                .collect(),
            Complex::Flag(f) => f.cliques_within(&f.vertex_set(), d + 1),
        })
    }

    /// Every simplex; refused when the complex is only partially enumerable.
    pub fn all_simplices(&self) -> Result<Vec<Simplex>, ComplexError> {
        match self {
            Complex::Explicit(e) => {
                if let Some(limit) = e.truncated_above {
                    return Err(ComplexError::EnumerationRefused {
                        requested: limit + 1,
                        limit,
                    });
                }
                Ok(e.simplices.iter().cloned().collect())
            }
            Complex::Flag(f) => {
                self.check_limit(f.dim_cap + 1)?;
                Ok(f.cliques_within(&f.vertex_set(), f.dim_cap + 1))
            }
        }
    }

    /// Largest dimension of a simplex; `None` for the empty complex or when
    /// enumeration is incomplete.
    pub fn dimension(&self) -> Option<usize> {
        if self.enumeration_limit().is_some() {
            return None;
        }
        match self {
            Complex::Explicit(e) => e.simplices.iter().map(Simplex::dim).max(),
            Complex::Flag(f) => f
                .cliques_within(&f.vertex_set(), f.dim_cap + 1)
                .iter()
                .map(Simplex::dim)
                .max(),
        }
    }

    /// Number of simplices per dimension up to `d`.
    pub fn f_vector(&self, d: usize) -> Result<Vec<usize>, ComplexError> {
        let mut counts = alloc::vec![0usize; d + 1];
        for s in self.simplices_up_to(d)? {
            counts[s.dim()] += 1;
        }
        Ok(counts)
    }

    /// Explicit copy; flag complexes are enumerated up to their cap.
    pub fn materialize(&self) -> ExplicitComplex {
        match self {
            Complex::Explicit(e) => e.clone(),
            Complex::Flag(f) => ExplicitComplex::from_closed(
                f.cliques_within(&f.vertex_set(), f.dim_cap + 1)
                    .into_iter()
                    .collect(),
                if f.complete { None } else { Some(f.dim_cap) },
            ),
        }
    }

    /// Whether both complexes have the same simplices.
    pub fn same_simplices(&self, other: &Complex) -> bool {
        match (self, other) {
            (Complex::Flag(a), Complex::Flag(b)) => a.adjacency == b.adjacency,
            _ => {
                let (a, b) = (self.materialize(), other.materialize());
                let limit = match (a.truncated_above, b.truncated_above) {
                    (None, None) => return a.simplices == b.simplices,
                    (Some(x), Some(y)) => x.min(y),
                    (Some(x), None) | (None, Some(x)) => x,
                };
                a.simplices
                    .iter()
                    .filter(|s| s.dim() <= limit)
                    .eq(b.simplices.iter().filter(|s| s.dim() <= limit))
            }
        }
    }

    /// Whether the complex is Δ[V] for its vertex set V (Δ[∅] included).
    pub fn is_standard_simplex(&self) -> bool {
        let verts: Vec<_> = self.vertices().into_iter().collect();
        match Simplex::new(verts) {
            Err(_) => true,
            Ok(top) => self.contains(&top),
        }
    }
}
