//! Exact field arithmetic and sparse linear algebra over ℚ and 𝔽_p.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::HomologyError;

/// Runtime choice of coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, HomologyError> {
        if is_prime(p) && p < (1 << 32) {
            Ok(Field::Prime(p))
        } else {
            Err(HomologyError::InvalidPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic of a concrete field.
pub trait FieldArith {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p));
        PrimeField { p }
    }
}

impl FieldArith for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        r.try_into().unwrap_or(0)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2).
        let mut base = *a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl FieldArith for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `y += a·x`.
pub fn axpy<F: FieldArith>(
    field: &F,
    y: &mut SparseVec<F::Elem>,
    a: &F::Elem,
    x: &SparseVec<F::Elem>,
) {
    if field.is_zero(a) || x.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            out.push((x[j].0, field.mul(a, &x[j].1)));
            j += 1;
        } else {
            let v = field.add(&y[i].1, &field.mul(a, &x[j].1));
            if !field.is_zero(&v) {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *y = out;
}

/// Span of a set of vectors kept with distinct pivots (largest index), each
/// carrying a tag vector so that reductions report coordinates.
pub struct ReducedBasis<'f, F: FieldArith> {
    field: &'f F,
    by_pivot: BTreeMap<usize, (SparseVec<F::Elem>, SparseVec<F::Elem>)>,
}

impl<'f, F: FieldArith> ReducedBasis<'f, F> {
    pub fn new(field: &'f F) -> Self {
        ReducedBasis {
            field,
            by_pivot: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.by_pivot.len()
    }

    /// Reduces `v` (with tag) until its pivot is free or it vanishes.
    pub fn reduce(
        &self,
        mut v: SparseVec<F::Elem>,
        mut tag: SparseVec<F::Elem>,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        while let Some((pivot, coeff)) = v.last().cloned() {
            match self.by_pivot.get(&pivot) {
                Some((b, btag)) => {
                    let lead = &b.last().expect("stored vectors are nonzero").1;
                    let factor = self
                        .field
                        .neg(&self.field.mul(&coeff, &self.field.inv(lead)));
                    axpy(self.field, &mut v, &factor, b);
                    axpy(self.field, &mut tag, &factor, btag);
                }
                None => break,
            }
        }
        (v, tag)
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec<F::Elem>, tag: SparseVec<F::Elem>) -> bool {
        let (v, tag) = self.reduce(v, tag);
        match v.last() {
            Some(&(pivot, _)) => {
                self.by_pivot.insert(pivot, (v, tag));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce(v, Vec::new()).0.is_empty()
    }
}

/// Rank of a set of sparse columns.
pub fn rank_of<F: FieldArith>(
    field: &F,
    columns: impl IntoIterator<Item = SparseVec<F::Elem>>,
) -> usize {
    let mut basis = ReducedBasis::new(field);
    for c in columns {
        basis.insert(c, Vec::new());
    }
    basis.rank()
}

/// Rank of a dense matrix given as rows.
pub fn dense_rank<F: FieldArith>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    rank_of(
        field,
        rows.iter().map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, e)| !field.is_zero(e))
                .map(|(i, e)| (i, e.clone()))
                .collect()
        }),
    )
}

/// Rank of an integer matrix (sparse columns) over `field`.
pub fn integer_rank<F: FieldArith>(field: &F, columns: &[Vec<(usize, i64)>]) -> usize {
    rank_of(
        field,
        columns.iter().map(|c| {
            c.iter()
                .map(|(i, v)| (*i, field.from_i64(*v)))
                .filter(|(_, e)| !field.is_zero(e))
                .collect()
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn field_constructor_rejects_composites() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert_eq!(Field::prime(3).unwrap(), Field::Prime(3));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] has determinant -2.
        let cols = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, -1)]];
        assert_eq!(integer_rank(&RationalField, &cols), 2);
        assert_eq!(integer_rank(&PrimeField::new(2), &cols), 1);
        assert_eq!(integer_rank(&PrimeField::new(3), &cols), 2);
    }

    #[test]
    fn reduced_basis_reports_coordinates() {
        let f = RationalField;
        let mut b = ReducedBasis::new(&f);
        let e = |i: usize, v: i64| vec![(i, f.from_i64(v))];
        assert!(b.insert(vec![(0, f.one()), (1, f.one())], e(0, 1)));
        assert!(b.insert(vec![(1, f.one())], e(1, 1)));
        let (res, tag) = b.reduce(vec![(0, f.from_i64(2)), (1, f.from_i64(5))], vec![]);
        assert!(res.is_empty());
        // (2,5) = 2·(1,1) + 3·(0,1)
        assert_eq!(tag, vec![(0, f.from_i64(-2)), (1, f.from_i64(-3))]);
    }
}
