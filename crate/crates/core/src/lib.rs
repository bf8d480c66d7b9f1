//! Simplicial complexes, Vietoris–Rips complexes of finite semimetric spaces,
//! exact homology, and decomposition analysis for covers of complexes.
#![no_std]

extern crate alloc;

pub mod analyzer;
pub mod complex;
pub mod homology;
pub mod metric;
