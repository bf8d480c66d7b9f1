use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use pushout_core::analyzer::{check_cofiber_shift, mv_check};
use pushout_core::complex::{intersection, obstruction, Complex, Simplex, VertexId, VertexSet};
use pushout_core::homology::{homology, smith_normal_form, Coefficients, Field, IntMatrix};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn complex_from_masks(masks: &[u16]) -> Complex {
    let facets: Vec<Vec<VertexId>> = masks
        .iter()
        .map(|&m| (0..16).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    Complex::from_facets(facets).unwrap()
}

/// Up to `n` vertices, a handful of random facets.
fn small_complex(max_vertices: u32, max_facets: usize) -> impl Strategy<Value = Complex> {
    (1..=max_vertices).prop_flat_map(move |n| {
        proptest::collection::vec(1u16..(1 << n), 1..=max_facets)
            .prop_map(|m| complex_from_masks(&m))
    })
}

/// A six-vertex projective plane glued to random extra facets, so that
/// 2-torsion shows up regularly.
fn with_torsion() -> impl Strategy<Value = Complex> {
    const RP2: [[u32; 3]; 10] = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    proptest::collection::vec(1u16..(1 << 8), 0..4).prop_map(|extra| {
        let mut facets: Vec<Vec<VertexId>> = RP2.iter().map(|f| f.to_vec()).collect();
        facets.extend(
            extra
                .iter()
                .map(|&m| (0..8).filter(|i| m & (1 << i) != 0).collect()),
        );
        Complex::from_facets(facets).unwrap()
    })
}

/// Each vertex goes to X, Y or both.
fn split(k: &Complex, sides: &[u8]) -> (VertexSet, VertexSet) {
    let mut x = VertexSet::new();
    let mut y = VertexSet::new();
    for (i, v) in k.vertices().into_iter().enumerate() {
        match sides[i % sides.len()] % 3 {
            0 => {
                x.insert(v);
            }
            1 => {
                y.insert(v);
            }
            _ => {
                x.insert(v);
                y.insert(v);
            }
        }
    }
    (x, y)
}

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..ncols {
                    let t = &m[rank][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=12, 1usize..=12, 0u8..3).prop_flat_map(|(r, c, kind)| {
        let entries = proptest::collection::vec(proptest::collection::vec(-4i64..=4, c), r);
        // kind 0: dense; kind 1: sparse; kind 2: rows built from three vectors (rank ≤ 3).
        (
            entries,
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), 3),
        )
            .prop_map(move |(mut m, thin)| {
                match kind {
                    1 => m.iter_mut().flatten().for_each(|v| {
                        if v.abs() < 3 {
                            *v = 0
                        }
                    }),
                    2 => {
                        for (i, row) in m.iter_mut().enumerate() {
                            let w = thin[i % 3].clone();
                            let s = (i as i64 % 5) - 2;
                            for (j, v) in row.iter_mut().enumerate() {
                                *v = s * w[j] + (i as i64 % 2) * thin[(i + 1) % 3][j];
                            }
                        }
                    }
                    _ => {}
                }
                m
            })
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn mayer_vietoris_is_exact(k in small_complex(8, 6), sides in proptest::collection::vec(any::<u8>(), 8)) {
        let (x, y) = split(&k, &sides);
        for field in [Field::Rationals, Field::Prime(2)] {
            let mv = mv_check(&k, &x, &y, field, 4).unwrap();
            prop_assert!(mv.is_exact(), "{:?}", mv.rows);
        }
    }

    #[test]
    fn clique_obstruction_is_intersection_of_vertex_obstructions(
        n in 2u32..=8,
        edge_bits in any::<u32>(),
        a_bits in any::<u8>(),
    ) {
        let pairs: Vec<(u32, u32)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| edge_bits & (1 << (i % 32)) != 0)
            .map(|(_, &e)| e)
            .collect();
        let k = Complex::flag(0..n, edges, n as usize);
        let a: VertexSet = (0..n).filter(|i| a_bits & (1 << i) != 0).collect();
        for sigma in k.all_simplices().unwrap() {
            let whole = obstruction(&k, &sigma, &a).unwrap();
            let mut meet: Option<Complex> = None;
            for &v in sigma.vertices() {
                let st = obstruction(&k, &Simplex::vertex(v), &a).unwrap();
                meet = Some(match meet {
                    None => st,
                    Some(m) => intersection(&m, &st),
                });
            }
            prop_assert!(whole.same_simplices(&meet.unwrap()));
            // Brute force: subsets of A whose union with σ is a clique.
            let free: Vec<u32> = a.iter().copied().collect();
            let mut expected = BTreeSet::new();
            for m in 1u32..(1 << free.len()) {
                let mu: Vec<u32> = free.iter().enumerate().filter(|(i, _)| m & (1 << i) != 0).map(|(_, &v)| v).collect();
                let mut all = mu.clone();
                all.extend_from_slice(sigma.vertices());
                if k.contains(&Simplex::new(all).unwrap()) {
                    expected.insert(Simplex::new(mu).unwrap());
                }
            }
            let got: BTreeSet<Simplex> = whole.all_simplices().unwrap().into_iter().collect();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn universal_coefficients(k in prop_oneof![small_complex(8, 6), with_torsion()]) {
        let z = homology(&k, Coefficients::Integers, 3, true).unwrap();
        let q = homology(&k, Coefficients::RATIONALS, 3, true).unwrap();
        prop_assert_eq!(q.ranks(), z.ranks());
        for p in [2u64, 3] {
            let fp = homology(&k, Coefficients::Field(Field::Prime(p)), 3, true).unwrap();
            for d in 0..=3 {
                let below = if d == 0 { 0 } else { z.group(d - 1).p_torsion_count(p) };
                prop_assert_eq!(fp.rank(d), z.rank(d) + z.group(d).p_torsion_count(p) + below);
            }
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn cofiber_shift_for_every_simplex(k in small_complex(6, 4)) {
        let top = k.dimension().unwrap_or(0) + 2;
        for sigma in k.all_simplices().unwrap() {
            let c = check_cofiber_shift(&k, &sigma, Coefficients::Integers, top).unwrap();
            prop_assert!(c.holds(), "{:?}: {:?}", sigma, c.mismatches);
        }
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn smith_rank_matches_rational_elimination(m in matrix()) {
        let snf = smith_normal_form(&IntMatrix::from_dense(&m));
        prop_assert_eq!(snf.rank(), rational_rank(&m));
        for w in snf.invariants.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(snf.invariants.iter().all(|d| d >= &BigInt::one()));
    }
}

#[test]
fn projective_plane_has_two_torsion() {
    let k = complex_from_masks(&[
        0b000111, 0b001101, 0b011001, 0b110001, 0b100011, 0b010110, 0b101100, 0b011010, 0b110100,
        0b101010,
    ]);
    let z = homology(&k, Coefficients::Integers, 2, true).unwrap();
    assert_eq!(z.group(1).torsion, vec![2]);
    assert_eq!(z.rank(2), 0);
    let f2 = homology(&k, Coefficients::Field(Field::Prime(2)), 2, true).unwrap();
    assert_eq!(f2.ranks(), vec![0, 1, 1]);
}
