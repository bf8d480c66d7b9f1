//! Homology groups over ℤ, ℚ and 𝔽_p.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::complex::{is_subcomplex, Complex};

use super::chain::ChainComplex;
use super::field::{integer_rank, Field, PrimeField, RationalField};
use super::snf::{smith_normal_form, IntMatrix};
use super::HomologyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Coefficients {
    Integers,
    Field(Field),
}

impl Coefficients {
    pub const RATIONALS: Coefficients = Coefficients::Field(Field::Rationals);

    pub fn prime(p: u64) -> Result<Self, HomologyError> {
        Ok(Coefficients::Field(Field::prime(p)?))
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("Z"),
            Coefficients::Field(k) => k.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ProfileKind {
    Absolute,
    Reduced,
    /// `H_*(K, L)`, computed from `C(K)/C(L)`.
    Relative,
}

/// One homology group: free rank plus torsion as prime powers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomologyGroup {
    pub rank: usize,
    /// Prime powers `p^k` of the cyclic torsion summands, sorted.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of torsion summands whose order is divisible by `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        self.torsion.iter().filter(|&&q| q % p == 0).count()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if self.rank == 1 {
            parts.push("Z".into());
        } else if self.rank > 1 {
            parts.push(alloc::format!("Z^{}", self.rank));
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Homology in degrees `0..=max_degree`, plus degree −1 when reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomologyProfile {
    pub coefficients: Coefficients,
    pub kind: ProfileKind,
    /// Rank of `H̃_{-1}`: one exactly for the empty complex, reduced case.
    pub minus_one: usize,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn max_degree(&self) -> usize {
        self.groups.len().saturating_sub(1)
    }

    /// Group in degree `d`; degrees beyond the computed range read as zero.
    pub fn group(&self, d: usize) -> HomologyGroup {
        self.groups.get(d).cloned().unwrap_or_default()
    }

    pub fn rank(&self, d: usize) -> usize {
        self.groups.get(d).map_or(0, |g| g.rank)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    /// Every computed group vanishes, including degree −1.
    pub fn is_trivial(&self) -> bool {
        self.minus_one == 0 && self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Every group in degrees `0..=d` vanishes, including degree −1.
    pub fn is_trivial_through(&self, d: usize) -> bool {
        self.minus_one == 0 && self.groups.iter().take(d + 1).all(HomologyGroup::is_zero)
    }

    /// Same groups in every degree computed by both profiles.
    pub fn agrees_with(&self, other: &HomologyProfile) -> bool {
        let n = self.groups.len().min(other.groups.len());
        self.minus_one == other.minus_one && self.groups[..n] == other.groups[..n]
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ProfileKind::Absolute => "H",
            ProfileKind::Reduced => "~H",
            ProfileKind::Relative => "H(rel)",
        };
        if self.kind == ProfileKind::Reduced {
            write!(
                f,
                "{tag}_-1={} ",
                if self.minus_one == 0 { "0" } else { "Z" }
            )?;
        }
        for (d, g) in self.groups.iter().enumerate() {
            if d > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{tag}_{d}={g}")?;
        }
        write!(f, " ({})", self.coefficients)
    }
}

/// Ranks and torsion of every boundary map `∂_d`, `d = 1..=top`.
struct BoundaryData {
    ranks: Vec<usize>,
    torsion: Vec<Vec<u64>>,
}

fn boundary_data(
    chains: &ChainComplex,
    coefficients: Coefficients,
) -> Result<BoundaryData, HomologyError> {
    let top = chains.top();
    let mut ranks = alloc::vec![0usize; top + 2];
    let mut torsion = alloc::vec![Vec::new(); top + 2];
    for d in 1..=top {
        let b = chains.boundary(d);
        match coefficients {
            Coefficients::Integers => {
                let snf = smith_normal_form(&IntMatrix::from_columns(b.nrows, &b.columns));
                ranks[d] = snf.rank();
                let mut t = Vec::new();
                for inv in snf.torsion() {
                    t.extend(prime_power_factors(inv)?);
                }
                t.sort_unstable();
                torsion[d] = t;
            }
            Coefficients::Field(Field::Rationals) => {
                ranks[d] = integer_rank(&RationalField, &b.columns)
            }
            Coefficients::Field(Field::Prime(p)) => {
                ranks[d] = integer_rank(&PrimeField::new(p), &b.columns)
            }
        }
    }
    Ok(BoundaryData { ranks, torsion })
}

/// Splits `n > 1` into prime powers.
pub(crate) fn prime_power_factors(n: &BigInt) -> Result<Vec<u64>, HomologyError> {
    let mut n = n.to_u64().ok_or(HomologyError::TorsionOverflow)?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut q = 1u64;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out.sort_unstable();
    Ok(out)
}

fn assemble(
    chains: &ChainComplex,
    data: BoundaryData,
    max_degree: usize,
    coefficients: Coefficients,
    kind: ProfileKind,
) -> HomologyProfile {
    let augmented = kind == ProfileKind::Reduced;
    let c0 = chains.rank(0);
    let epsilon = usize::from(augmented && c0 > 0);
    let minus_one = if augmented { 1 - epsilon } else { 0 };
    let groups = (0..=max_degree)
        .map(|d| {
            let out_rank = if d == 0 { epsilon } else { data.ranks[d] };
            let in_rank = data.ranks[d + 1];
            HomologyGroup {
                rank: chains.rank(d) - out_rank - in_rank,
                torsion: data.torsion[d + 1].clone(),
            }
        })
        .collect();
    HomologyProfile {
        coefficients,
        kind,
        minus_one,
        groups,
    }
}

/// `H_d(K)` (or reduced `H̃_d(K)`) for `d = 0..=max_degree`.
///
/// Needs simplices up to dimension `max_degree + 1`.
pub fn homology(
    k: &Complex,
    coefficients: Coefficients,
    max_degree: usize,
    reduced: bool,
) -> Result<HomologyProfile, HomologyError> {
    let chains = chains_for(k, max_degree)?;
    let data = boundary_data(&chains, coefficients)?;
    let kind = if reduced {
        ProfileKind::Reduced
    } else {
        ProfileKind::Absolute
    };
    Ok(assemble(&chains, data, max_degree, coefficients, kind))
}

/// `H_d(K, L)` for `d = 0..=max_degree`. With `L = ∅` this is `H_d(K)`;
/// for nonempty `L` it agrees with the reduced homology of `K/L`.
pub fn relative_homology(
    k: &Complex,
    l: &Complex,
    coefficients: Coefficients,
    max_degree: usize,
) -> Result<HomologyProfile, HomologyError> {
    is_subcomplex(l, k)?;
    let chains = ChainComplex::relative(k, l, max_degree + 1)?;
    let data = boundary_data(&chains, coefficients)?;
    Ok(assemble(
        &chains,
        data,
        max_degree,
        coefficients,
        ProfileKind::Relative,
    ))
}

/// Largest degree whose homology `k` can determine, if any.
pub fn computable_degree(k: &Complex) -> Option<usize> {
    match k.enumeration_limit() {
        None => Some(k.dimension().unwrap_or(0)),
        Some(0) => None,
        Some(limit) => Some(limit - 1),
    }
}

/// Reduced integral homology through every degree the complex supports.
pub fn full_reduced_homology(k: &Complex) -> Result<HomologyProfile, HomologyError> {
    let d = computable_degree(k).ok_or(crate::complex::ComplexError::EnumerationRefused {
        requested: 1,
        limit: 0,
    })?;
    homology(k, Coefficients::Integers, d, true)
}

fn chains_for(k: &Complex, max_degree: usize) -> Result<ChainComplex, HomologyError> {
    ChainComplex::new(k, max_degree + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ranks(k: &Complex, c: Coefficients, n: usize, reduced: bool) -> Vec<usize> {
        homology(k, c, n, reduced).unwrap().ranks()
    }

    fn sphere(n: u32) -> Complex {
        // Boundary of the (n+1)-simplex.
        let verts: Vec<u32> = (0..n + 2).collect();
        Complex::from_facets((0..verts.len()).map(|skip| {
            verts
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, v)| *v)
                .collect::<Vec<_>>()
        }))
        .unwrap()
    }

    /// Six-vertex triangulation of the real projective plane.
    pub(crate) fn rp2() -> Complex {
        Complex::from_facets(vec![
            vec![1, 2, 4],
            vec![1, 2, 6],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![1, 5, 6],
            vec![2, 3, 5],
            vec![2, 3, 6],
            vec![2, 4, 5],
            vec![3, 4, 6],
            vec![4, 5, 6],
        ])
        .unwrap()
    }

    #[test]
    fn spheres() {
        assert_eq!(
            ranks(&sphere(1), Coefficients::Integers, 2, false),
            vec![1, 1, 0]
        );
        assert_eq!(
            ranks(&sphere(2), Coefficients::RATIONALS, 3, true),
            vec![0, 0, 1, 0]
        );
        assert_eq!(
            ranks(&sphere(3), Coefficients::Integers, 4, true),
            vec![0, 0, 0, 1, 0]
        );
    }

    #[test]
    fn empty_complex_reduced() {
        let p = homology(&Complex::empty(), Coefficients::Integers, 2, true).unwrap();
        assert_eq!(p.minus_one, 1);
        assert!(!p.is_trivial());
        let p = homology(&Complex::empty(), Coefficients::Integers, 2, false).unwrap();
        assert!(p.is_trivial());
    }

    #[test]
    fn projective_plane() {
        let k = rp2();
        let z = homology(&k, Coefficients::Integers, 2, false).unwrap();
        assert_eq!(
            z.group(0),
            HomologyGroup {
                rank: 1,
                torsion: vec![]
            }
        );
        assert_eq!(
            z.group(1),
            HomologyGroup {
                rank: 0,
                torsion: vec![2]
            }
        );
        assert!(z.group(2).is_zero());
        assert_eq!(
            ranks(&k, Coefficients::prime(2).unwrap(), 2, false),
            vec![1, 1, 1]
        );
        assert_eq!(
            ranks(&k, Coefficients::prime(3).unwrap(), 2, false),
            vec![1, 0, 0]
        );
        assert_eq!(ranks(&k, Coefficients::RATIONALS, 2, false), vec![1, 0, 0]);
    }

    #[test]
    fn relative_homology_of_disk_rel_boundary() {
        let disk = Complex::full_simplex([0, 1, 2]);
        let rel = relative_homology(&disk, &sphere(1), Coefficients::Integers, 2).unwrap();
        assert_eq!(rel.ranks(), vec![0, 0, 1]);
        let abs = relative_homology(&disk, &Complex::empty(), Coefficients::Integers, 2).unwrap();
        assert_eq!(abs.ranks(), vec![1, 0, 0]);
    }

    #[test]
    fn relative_requires_subcomplex() {
        let a = Complex::full_simplex([1, 2]);
        let b = Complex::full_simplex([3]);
        assert!(matches!(
            relative_homology(&a, &b, Coefficients::Integers, 1),
            Err(HomologyError::Complex(_))
        ));
    }

    #[test]
    fn prime_powers() {
        let f = prime_power_factors(&BigInt::from(360)).unwrap();
        assert_eq!(f, vec![5, 8, 9]);
    }
}
