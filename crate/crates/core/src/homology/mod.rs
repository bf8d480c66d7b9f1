//! Simplicial homology with integer, rational and prime-field coefficients.
//!
//! Integer homology goes through [`smith_normal_form`]; field homology uses
//! separate sparse elimination, so the two paths can check each other.

mod certificate;
mod chain;
mod field;
mod induced;
mod profile;
mod snf;

pub use certificate::{
    contractibility_certificate, ContractibilityCertificate, ElementaryCollapse,
};
pub use chain::{boundary, BoundaryMatrix, ChainComplex};
pub use field::{
    axpy, dense_rank, integer_rank, is_prime, rank_of, Field, FieldArith, PrimeField,
    RationalField, ReducedBasis, SparseVec,
};
pub use induced::{diagonal_map_rank, field_betti, induced_map, sum_map_rank, InducedMap};
pub use profile::{
    computable_degree, full_reduced_homology, homology, relative_homology, Coefficients,
    HomologyGroup, HomologyProfile, ProfileKind,
};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

use crate::complex::ComplexError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("the empty complex has no contractibility certificate")]
    EmptyComplex,
    #[error("{0} is not a usable prime modulus")]
    InvalidPrime(u64),
    #[error("torsion coefficient does not fit in 64 bits")]
    TorsionOverflow,
}
