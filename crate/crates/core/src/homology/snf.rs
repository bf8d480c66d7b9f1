//! Smith normal form of sparse integer matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix stored by rows; each row has strictly increasing
/// column indices and no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

/// Invariant factors `d_1 | d_2 | … | d_r`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub nrows: usize,
    pub ncols: usize,
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.invariants.iter().filter(|d| !d.is_one())
    }
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            nrows,
            ncols,
            rows: alloc::vec![Vec::new(); nrows],
        }
    }

    pub fn from_dense<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(j, v)| (j, v.clone().into()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        IntMatrix { nrows, ncols, rows }
    }

    /// Builds from sparse columns (as produced by boundary matrices).
    pub fn from_columns(nrows: usize, columns: &[Vec<(usize, i64)>]) -> Self {
        let mut rows: Vec<Vec<(usize, BigInt)>> = alloc::vec![Vec::new(); nrows];
        for (j, col) in columns.iter().enumerate() {
            for &(i, v) in col {
                if v != 0 {
                    rows[i].push((j, BigInt::from(v)));
                }
            }
        }
        IntMatrix {
            nrows,
            ncols: columns.len(),
            rows,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = alloc::vec![alloc::vec![BigInt::zero(); self.ncols]; self.nrows];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }
}

fn entry(row: &[(usize, BigInt)], col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|i| &row[i].1)
}

/// `row -= q · pivot_row`.
fn sub_multiple(row: &mut Vec<(usize, BigInt)>, q: &BigInt, pivot_row: &[(usize, BigInt)]) {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot_row.len() {
        if j >= pivot_row.len() || (i < row.len() && row[i].0 < pivot_row[j].0) {
            out.push(core::mem::take(&mut row[i]));
            i += 1;
        } else if i >= row.len() || pivot_row[j].0 < row[i].0 {
            out.push((pivot_row[j].0, -(q * &pivot_row[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - q * &pivot_row[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *row = out;
}

/// Smith normal form by pivoting on an entry of least absolute value.
///
/// Row operations clear the pivot column; column operations then clear the
/// pivot row, touching no other row because the column is already clear.
/// Nonzero remainders restart the search with a strictly smaller minimum.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut rows = m.rows.clone();
    let mut active: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let mut diagonal: Vec<BigInt> = Vec::new();

    loop {
        active.retain(|&i| !rows[i].is_empty());
        let mut best: Option<(usize, usize, BigInt)> = None;
        'search: for &i in &active {
            for (j, v) in &rows[i] {
                let a = v.abs();
                if best.as_ref().is_none_or(|b| a < b.2) {
                    let unit = a.is_one();
                    best = Some((i, *j, a));
                    if unit {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let pivot = entry(&rows[pi], pj).cloned().expect("pivot present");

        let pivot_row = rows[pi].clone();
        let mut column_dirty = false;
        for &r in &active {
            if r == pi {
                continue;
            }
            if let Some(a) = entry(&rows[r], pj) {
                let q = a.div_floor(&pivot);
                sub_multiple(&mut rows[r], &q, &pivot_row);
                if entry(&rows[r], pj).is_some() {
                    column_dirty = true;
                }
            }
        }
        if column_dirty {
            continue;
        }

        let mut row_dirty = false;
        for e in rows[pi].iter_mut() {
            if e.0 != pj {
                let r = e.1.mod_floor(&pivot);
                if !r.is_zero() {
                    row_dirty = true;
                }
                e.1 = r;
            }
        }
        rows[pi].retain(|e| !e.1.is_zero());
        if row_dirty {
            continue;
        }

        diagonal.push(pivot.abs());
        rows[pi].clear();
    }

    SmithForm {
        nrows: m.nrows,
        ncols: m.ncols,
        invariants: divisibility_chain(diagonal),
    }
}

/// Turns a diagonal into the equivalent chain `d_1 | d_2 | …` using
/// `diag(a, b) ~ diag(gcd, lcm)`.
fn divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.sort();
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if !(&d[j] % &d[i]).is_zero() {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}
