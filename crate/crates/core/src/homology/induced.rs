//! Maps on homology induced by inclusions, over a field.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::{is_subcomplex, Complex};

use super::chain::ChainComplex;
use super::field::{
    rank_of, Field, FieldArith, PrimeField, RationalField, ReducedBasis, SparseVec,
};
use super::HomologyError;

/// A basis of `H_d` over a field: cycle representatives together with a
/// reducer that writes any cycle in terms of them.
struct HomologyBasis<'f, F: FieldArith> {
    field: &'f F,
    chains: ChainComplex,
    degree: usize,
    reps: Vec<SparseVec<F::Elem>>,
    reducer: ReducedBasis<'f, F>,
}

fn column<F: FieldArith>(
    field: &F,
    chains: &ChainComplex,
    d: usize,
    j: usize,
) -> SparseVec<F::Elem> {
    chains
        .boundary_column(d, j)
        .into_iter()
        .map(|(i, v)| (i, field.from_i64(v)))
        .filter(|(_, v)| !field.is_zero(v))
        .collect()
}

impl<'f, F: FieldArith> HomologyBasis<'f, F> {
    fn new(field: &'f F, k: &Complex, degree: usize) -> Result<Self, HomologyError> {
        let chains = ChainComplex::new(k, degree + 1)?;
        let mut reducer = ReducedBasis::new(field);
        for j in 0..chains.rank(degree + 1) {
            reducer.insert(column(field, &chains, degree + 1, j), Vec::new());
        }

        let n = chains.rank(degree);
        let cycles: Vec<SparseVec<F::Elem>> = if degree == 0 {
            (0..n).map(|j| alloc::vec![(j, field.one())]).collect()
        } else {
            let mut image = ReducedBasis::new(field);
            let mut kernel = Vec::new();
            for j in 0..n {
                let (res, tag) = image.reduce(
                    column(field, &chains, degree, j),
                    alloc::vec![(j, field.one())],
                );
                if res.is_empty() {
                    kernel.push(tag);
                } else {
                    image.insert(res, tag);
                }
            }
            kernel
        };

        let mut reps = Vec::new();
        for z in cycles {
            let tag = alloc::vec![(reps.len(), field.one())];
            if reducer.insert(z.clone(), tag) {
                reps.push(z);
            }
        }
        Ok(HomologyBasis {
            field,
            chains,
            degree,
            reps,
            reducer,
        })
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cycle of a subcomplex.
    fn coordinates_of(
        &self,
        source: &ChainComplex,
        cycle: &SparseVec<F::Elem>,
    ) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = cycle
            .iter()
            .map(|(i, e)| {
                let s = &source.cells(self.degree)[*i];
                let j = self.chains.index_of(s).expect("subcomplex simplex present");
                (j, e.clone())
            })
            .collect();
        v.sort_by_key(|e| e.0);
        let (res, tag) = self.reducer.reduce(v, Vec::new());
        debug_assert!(res.is_empty(), "image of a cycle must be a cycle");
        tag.into_iter()
            .map(|(i, e)| (i, self.field.neg(&e)))
            .collect()
    }
}

/// Linear map `H_d(L; F) → H_d(K; F)` induced by an inclusion `L ⊆ K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: usize,
    pub field: Field,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// `target_dim × source_dim`; 𝔽_p entries use representatives `0..p`.
    pub matrix: Vec<Vec<BigRational>>,
}

impl InducedMap {
    pub fn is_injective(&self) -> bool {
        self.rank == self.source_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

fn induced_generic<F: FieldArith>(
    field: &F,
    tag: Field,
    l: &Complex,
    k: &Complex,
    degree: usize,
) -> Result<InducedMap, HomologyError> {
    let src = HomologyBasis::new(field, l, degree)?;
    let dst = HomologyBasis::new(field, k, degree)?;
    let cols: Vec<SparseVec<F::Elem>> = src
        .reps
        .iter()
        .map(|z| dst.coordinates_of(&src.chains, z))
        .collect();
    let mut matrix = alloc::vec![alloc::vec![BigRational::zero(); src.dim()]; dst.dim()];
    for (j, c) in cols.iter().enumerate() {
        for (i, e) in c {
            matrix[*i][j] = field.to_rational(e);
        }
    }
    Ok(InducedMap {
        degree,
        field: tag,
        source_dim: src.dim(),
        target_dim: dst.dim(),
        rank: rank_of(field, cols),
        matrix,
    })
}

/// The map `H_d(L; F) → H_d(K; F)` for a subcomplex `L ⊆ K` (unreduced).
pub fn induced_map(
    l: &Complex,
    k: &Complex,
    degree: usize,
    field: Field,
) -> Result<InducedMap, HomologyError> {
    is_subcomplex(l, k)?;
    match field {
        Field::Rationals => induced_generic(&RationalField, field, l, k, degree),
        Field::Prime(p) => induced_generic(&PrimeField::new(p), field, l, k, degree),
    }
}

/// Dimension of `H_d(K; F)` (unreduced).
pub fn field_betti(k: &Complex, degree: usize, field: Field) -> Result<usize, HomologyError> {
    match field {
        Field::Rationals => Ok(HomologyBasis::new(&RationalField, k, degree)?.dim()),
        Field::Prime(p) => Ok(HomologyBasis::new(&PrimeField::new(p), k, degree)?.dim()),
    }
}

fn sum_rank_generic<F: FieldArith>(
    field: &F,
    sources: &[&Complex],
    target: &Complex,
    degree: usize,
) -> Result<usize, HomologyError> {
    let dst = HomologyBasis::new(field, target, degree)?;
    let mut cols = Vec::new();
    for s in sources {
        let src = HomologyBasis::new(field, s, degree)?;
        cols.extend(src.reps.iter().map(|z| dst.coordinates_of(&src.chains, z)));
    }
    Ok(rank_of(field, cols))
}

fn diagonal_rank_generic<F: FieldArith>(
    field: &F,
    source: &Complex,
    targets: &[&Complex],
    degree: usize,
) -> Result<usize, HomologyError> {
    let src = HomologyBasis::new(field, source, degree)?;
    let dsts = targets
        .iter()
        .map(|t| HomologyBasis::new(field, t, degree))
        .collect::<Result<Vec<_>, _>>()?;
    let cols = src.reps.iter().map(|z| {
        let mut col = Vec::new();
        let mut offset = 0;
        for d in &dsts {
            col.extend(
                d.coordinates_of(&src.chains, z)
                    .into_iter()
                    .map(|(i, e)| (i + offset, e)),
            );
            offset += d.dim();
        }
        col
    });
    Ok(rank_of(field, cols))
}

/// Rank of `⊕ H_d(S_i) → H_d(T)`, the sum of the inclusions.
pub fn sum_map_rank(
    sources: &[&Complex],
    target: &Complex,
    degree: usize,
    field: Field,
) -> Result<usize, HomologyError> {
    for s in sources {
        is_subcomplex(s, target)?;
    }
    match field {
        Field::Rationals => sum_rank_generic(&RationalField, sources, target, degree),
        Field::Prime(p) => sum_rank_generic(&PrimeField::new(p), sources, target, degree),
    }
}

/// Rank of `H_d(S) → ⊕ H_d(T_j)`, the product of the inclusions.
pub fn diagonal_map_rank(
    source: &Complex,
    targets: &[&Complex],
    degree: usize,
    field: Field,
) -> Result<usize, HomologyError> {
    for t in targets {
        is_subcomplex(source, t)?;
    }
    match field {
        Field::Rationals => diagonal_rank_generic(&RationalField, source, targets, degree),
        Field::Prime(p) => diagonal_rank_generic(&PrimeField::new(p), source, targets, degree),
    }
}
