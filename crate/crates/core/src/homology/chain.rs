//! Simplicial chain complexes and their boundary matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::{Complex, Simplex};

use super::HomologyError;

/// Oriented simplicial chains of a complex (or of a pair `K/L`) in
/// dimensions `0..=top`. Simplices are oriented by increasing vertex id.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    cells: Vec<Vec<Simplex>>,
    index: Vec<BTreeMap<Simplex, usize>>,
}

/// Sparse integer matrix of `∂_d : C_d → C_{d-1}`, stored by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub nrows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = alloc::vec![alloc::vec![0i64; self.columns.len()]; self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i][j] = v;
            }
        }
        out
    }
}

impl ChainComplex {
    /// Chains of `k` up to dimension `top`.
    pub fn new(k: &Complex, top: usize) -> Result<Self, HomologyError> {
        let simplices = enumerate(k, top)?;
        Ok(Self::from_sorted(simplices, top))
    }

    /// Relative chains `C(K)/C(L)`: simplices of `k` not in `l`.
    pub fn relative(k: &Complex, l: &Complex, top: usize) -> Result<Self, HomologyError> {
        let simplices = enumerate(k, top)?
            .into_iter()
            .filter(|s| !l.contains(s))
            .collect();
        Ok(Self::from_sorted(simplices, top))
    }

    fn from_sorted(simplices: Vec<Simplex>, top: usize) -> Self {
        let mut cells = alloc::vec![Vec::new(); top + 1];
        for s in simplices {
            cells[s.dim()].push(s);
        }
        let index = cells
            .iter()
            .map(|c| c.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        ChainComplex { cells, index }
    }

    pub fn top(&self) -> usize {
        self.cells.len() - 1
    }

    /// Rank of `C_d`; zero above `top`.
    pub fn rank(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, Vec::len)
    }

    pub fn cells(&self, d: usize) -> &[Simplex] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    /// Boundary of the `j`-th `d`-cell; faces outside the chain complex
    /// (the subcomplex in the relative case) are dropped.
    pub fn boundary_column(&self, d: usize, j: usize) -> Vec<(usize, i64)> {
        if d == 0 {
            return Vec::new();
        }
        let mut col: Vec<(usize, i64)> = self.cells[d][j]
            .facets()
            .enumerate()
            .filter_map(|(i, face)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                self.index[d - 1].get(&face).map(|&r| (r, sign))
            })
            .collect();
        col.sort_unstable();
        col
    }

    /// `∂_d` for `1 <= d <= top`; an empty matrix otherwise.
    pub fn boundary(&self, d: usize) -> BoundaryMatrix {
        if d == 0 || d > self.top() {
            return BoundaryMatrix {
                nrows: if d == 0 { 0 } else { self.rank(d - 1) },
                columns: alloc::vec![Vec::new(); self.rank(d)],
            };
        }
        BoundaryMatrix {
            nrows: self.rank(d - 1),
            columns: (0..self.rank(d))
                .map(|j| self.boundary_column(d, j))
                .collect(),
        }
    }
}

fn enumerate(k: &Complex, top: usize) -> Result<Vec<Simplex>, HomologyError> {
    Ok(k.simplices_up_to(top)?)
}

/// Boundary matrix `∂_d` of `k` with rows and columns in lexicographic order.
pub fn boundary(k: &Complex, d: usize) -> Result<BoundaryMatrix, HomologyError> {
    Ok(ChainComplex::new(k, d)?.boundary(d))
}
