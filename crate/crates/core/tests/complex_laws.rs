use std::collections::BTreeSet;

use proptest::prelude::*;

use pushout_core::complex::{
    intersection, is_central, join, obstruction, restriction, skeleton, star, union, Complex,
    Simplex, VertexId, VertexSet,
};
use pushout_core::homology::{contractibility_certificate, homology, Coefficients, Field};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn on(offset: u32, masks: &[u8]) -> Complex {
    let facets: Vec<Vec<VertexId>> = masks
        .iter()
        .map(|&m| {
            (0..8)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| i + offset)
                .collect()
        })
        .collect();
    Complex::from_facets(facets).unwrap()
}

fn complex() -> impl Strategy<Value = Complex> {
    proptest::collection::vec(1u8.., 1..5).prop_map(|m| on(0, &m))
}

fn subset() -> impl Strategy<Value = VertexSet> {
    any::<u8>().prop_map(|m| (0..8).filter(|i| m & (1 << i) != 0).collect())
}

fn downward_closed(k: &Complex) -> bool {
    let all: BTreeSet<Simplex> = k.all_simplices().unwrap().into_iter().collect();
    all.iter()
        .all(|s| s.faces().iter().all(|f| all.contains(f)))
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn operations_stay_downward_closed(k in complex(), l in complex(), s in subset()) {
        prop_assert!(downward_closed(&restriction(&k, &s)));
        prop_assert!(downward_closed(&union(&k, &l)));
        prop_assert!(downward_closed(&intersection(&k, &l)));
        prop_assert!(downward_closed(&skeleton(&k, 1).unwrap()));
        for sigma in k.all_simplices().unwrap().into_iter().take(6) {
            prop_assert!(downward_closed(&star(&k, &sigma).unwrap()));
            prop_assert!(downward_closed(&obstruction(&k, &sigma, &s).unwrap()));
        }
    }

    #[test]
    fn obstructions_shrink_along_faces(k in complex(), a in subset()) {
        let ka = restriction(&k, &a);
        for sigma in k.all_simplices().unwrap() {
            let big = obstruction(&k, &sigma, &a).unwrap();
            prop_assert!(big.all_simplices().unwrap().iter().all(|m| ka.contains(m)));
            for tau in sigma.faces() {
                let small = obstruction(&k, &tau, &a).unwrap();
                prop_assert!(big.all_simplices().unwrap().iter().all(|m| small.contains(m)));
            }
        }
    }

    #[test]
    fn restrictions_intersect(x in subset(), y in subset()) {
        let full = Complex::full_simplex(0..8);
        let a: VertexSet = x.intersection(&y).copied().collect();
        prop_assert!(intersection(&restriction(&full, &x), &restriction(&full, &y))
            .same_simplices(&restriction(&full, &a)));
    }

    #[test]
    fn central_simplices_have_central_faces(k in complex()) {
        for tau in k.all_simplices().unwrap() {
            if is_central(&k, &tau).unwrap() {
                for face in tau.faces() {
                    prop_assert!(is_central(&k, &face).unwrap());
                }
            }
        }
    }

    #[test]
    fn join_distributes(
        a in proptest::collection::vec(1u8..16, 1..3),
        b in proptest::collection::vec(1u8..16, 1..3),
        c in proptest::collection::vec(1u8..16, 1..3),
    ) {
        let (k1, k2, l) = (on(0, &a), on(0, &b), on(8, &c));
        let lhs = join(&union(&k1, &k2), &l).unwrap();
        let rhs = union(&join(&k1, &l).unwrap(), &join(&k2, &l).unwrap());
        prop_assert!(lhs.same_simplices(&rhs));
        let lhs = join(&intersection(&k1, &k2), &l).unwrap();
        let rhs = intersection(&join(&k1, &l).unwrap(), &join(&k2, &l).unwrap());
        prop_assert!(lhs.same_simplices(&rhs));
    }

    #[test]
    fn flag_and_explicit_agree(n in 2u32..=7, bits in any::<u32>(), cap in 1usize..=4) {
        let edges: Vec<(u32, u32)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .map(|(_, e)| e)
            .collect();
        let flag = Complex::flag(0..n, edges, cap);
        let explicit = Complex::from_facets(
            flag.simplices_up_to(cap).unwrap().iter().map(|s| s.vertices().to_vec()),
        )
        .unwrap();
        for m in 1u32..(1 << n) {
            let s = Simplex::new((0..n).filter(|i| m & (1 << i) != 0).collect()).unwrap();
            if s.len() <= cap + 1 {
                prop_assert_eq!(flag.contains(&s), explicit.contains(&s));
            }
        }
    }

    #[test]
    fn certified_complexes_are_acyclic(k in complex()) {
        if contractibility_certificate(&k).unwrap().is_certificate() {
            for c in [
                Coefficients::Integers,
                Coefficients::RATIONALS,
                Coefficients::Field(Field::Prime(2)),
                Coefficients::Field(Field::Prime(3)),
            ] {
                prop_assert!(homology(&k, c, 4, true).unwrap().is_trivial());
            }
        }
    }
}
