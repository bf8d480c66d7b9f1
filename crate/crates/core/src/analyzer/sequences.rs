//! Exact-sequence bookkeeping: the cofiber of the inclusion that adds one
//! simplex's star, and rank accounting in the Mayer–Vietoris sequence.

use alloc::vec::Vec;

use crate::complex::{
    intersection, obstruction, restriction, star, union, Complex, Simplex, VertexSet,
};
use crate::homology::{
    diagonal_map_rank, field_betti, homology, relative_homology, sum_map_rank, Coefficients, Field,
    HomologyError, HomologyGroup, HomologyProfile,
};

/// Reduced group in degree `d ≥ -1`; zero below.
fn shifted(p: &HomologyProfile, d: isize) -> HomologyGroup {
    match d {
        d if d < -1 => HomologyGroup::default(),
        -1 => HomologyGroup {
            rank: p.minus_one,
            torsion: Vec::new(),
        },
        d => p.group(d as usize),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ShiftPart {
    /// `H_i(K, U)`.
    Relative,
    /// `H̃_j(U ∩ St(σ))`.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShiftMismatch {
    pub part: ShiftPart,
    pub degree: usize,
    pub found: HomologyGroup,
    pub expected: HomologyGroup,
}

/// Comparison of `H_i(K, U)` with `H̃_{i-n-1}(L)` and of `H̃_j(U ∩ St(σ))`
/// with `H̃_{j-n}(L)`, where `n = dim σ`, `L = St(σ, K₀ \ σ)` and
/// `U = ⋃_{v∈σ} K_{K₀∖{v}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShiftCheck {
    pub sigma: Simplex,
    pub relative: HomologyProfile,
    pub boundary: HomologyProfile,
    pub link: HomologyProfile,
    pub mismatches: Vec<ShiftMismatch>,
}

impl ShiftCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn check_cofiber_shift(
    k: &Complex,
    sigma: &Simplex,
    coefficients: Coefficients,
    max_degree: usize,
) -> Result<ShiftCheck, HomologyError> {
    let vertices = k.vertices();
    let sigma_set = sigma.to_set();
    let rest: VertexSet = vertices.difference(&sigma_set).copied().collect();
    let link = obstruction(k, sigma, &rest)?;
    let mut u = Complex::empty();
    for &v in sigma.vertices() {
        let mut others = vertices.clone();
        others.remove(&v);
        u = union(&u, &restriction(k, &others));
    }
    let boundary_part = intersection(&u, &star(k, sigma)?);

    let n = sigma.dim() as isize;
    let relative = relative_homology(k, &u, coefficients, max_degree)?;
    let boundary = homology(&boundary_part, coefficients, max_degree, true)?;
    let link_profile = homology(&link, coefficients, max_degree, true)?;

    let mut mismatches = Vec::new();
    for i in 0..=max_degree {
        let expected = shifted(&link_profile, i as isize - n - 1);
        let found = relative.group(i);
        if found != expected {
            mismatches.push(ShiftMismatch {
                part: ShiftPart::Relative,
                degree: i,
                found,
                expected,
            });
        }
        let expected = shifted(&link_profile, i as isize - n);
        let found = boundary.group(i);
        if found != expected {
            mismatches.push(ShiftMismatch {
                part: ShiftPart::Boundary,
                degree: i,
                found,
                expected,
            });
        }
    }
    Ok(ShiftCheck {
        sigma: sigma.clone(),
        relative,
        boundary,
        link: link_profile,
        mismatches,
    })
}

/// Dimensions and ranks in degree `d` of
/// `H_d(K_A) --α--> H_d(K_X) ⊕ H_d(K_Y) --β--> H_d(U)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MvRow {
    pub degree: usize,
    pub h_a: usize,
    pub h_x: usize,
    pub h_y: usize,
    pub h_u: usize,
    pub rank_alpha: usize,
    pub rank_beta: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MvMismatch {
    pub degree: usize,
    /// `true`: exactness at the middle term failed; `false`: the connecting
    /// map does not account for the cokernel of `β`.
    pub at_middle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MvCheck {
    pub field: Field,
    pub rows: Vec<MvRow>,
    pub mismatches: Vec<MvMismatch>,
}

impl MvCheck {
    pub fn is_exact(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Rank accounting in the Mayer–Vietoris sequence of `U = K_X ∪ K_Y`.
pub fn mv_check(
    k: &Complex,
    x: &VertexSet,
    y: &VertexSet,
    field: Field,
    max_degree: usize,
) -> Result<MvCheck, HomologyError> {
    let a: VertexSet = x.intersection(y).copied().collect();
    let kx = restriction(k, x);
    let ky = restriction(k, y);
    let ka = restriction(k, &a);
    let u = union(&kx, &ky);
    let mut rows = Vec::new();
    for degree in 0..=max_degree {
        rows.push(MvRow {
            degree,
            h_a: field_betti(&ka, degree, field)?,
            h_x: field_betti(&kx, degree, field)?,
            h_y: field_betti(&ky, degree, field)?,
            h_u: field_betti(&u, degree, field)?,
            rank_alpha: diagonal_map_rank(&ka, &[&kx, &ky], degree, field)?,
            rank_beta: sum_map_rank(&[&kx, &ky], &u, degree, field)?,
        });
    }
    let mut mismatches = Vec::new();
    for (d, r) in rows.iter().enumerate() {
        if r.h_x + r.h_y != r.rank_beta + r.rank_alpha {
            mismatches.push(MvMismatch {
                degree: d,
                at_middle: true,
            });
        }
        let kernel_below = match d {
            0 => 0,
            _ => rows[d - 1].h_a - rows[d - 1].rank_alpha,
        };
        if r.h_u - r.rank_beta != kernel_below {
            mismatches.push(MvMismatch {
                degree: d,
                at_middle: false,
            });
        }
    }
    Ok(MvCheck {
        field,
        rows,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(v: &[u32]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn shift_on_a_solid_triangle() {
        let k = Complex::full_simplex([0, 1, 2]);
        for s in [vec![0], vec![0, 1], vec![0, 1, 2]] {
            let c = check_cofiber_shift(&k, &Simplex::new(s).unwrap(), Coefficients::Integers, 3)
                .unwrap();
            assert!(c.holds(), "{:?}", c.mismatches);
        }
    }

    #[test]
    fn shift_on_an_octahedron() {
        // Suspension of a square: the link of a vertex is a circle.
        let k = Complex::flag(
            0..6,
            [
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
            ],
            3,
        );
        let c = check_cofiber_shift(&k, &Simplex::vertex(0), Coefficients::Integers, 2).unwrap();
        assert!(c.holds(), "{:?}", c.mismatches);
        assert_eq!(c.relative.rank(2), 1);
        let c = check_cofiber_shift(&k, &Simplex::edge(0, 2).unwrap(), Coefficients::Integers, 2)
            .unwrap();
        assert!(c.holds(), "{:?}", c.mismatches);
    }

    #[test]
    fn mayer_vietoris_on_a_circle_split_in_two_arcs() {
        let k = Complex::from_facets(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
        let mv = mv_check(&k, &set(&[0, 1, 2]), &set(&[2, 3, 0]), Field::Rationals, 2).unwrap();
        assert!(mv.is_exact(), "{:?}", mv.rows);
        assert_eq!(mv.rows[1].h_u, 1);
        assert_eq!(mv.rows[0].rank_alpha, 1);
    }

    #[test]
    fn mayer_vietoris_with_empty_intersection() {
        let k = Complex::from_facets(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let mv = mv_check(&k, &set(&[0, 1]), &set(&[2, 3]), Field::Prime(2), 1).unwrap();
        assert!(mv.is_exact());
        assert_eq!(mv.rows[0].h_u, 2);
    }
}
