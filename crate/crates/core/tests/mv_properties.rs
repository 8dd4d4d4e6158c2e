use mvt_core::mv::{
    generate_subalgebra, hom_enumerate, ideals, interval_algebra, iso_check, quotient, radical,
    semisimple_representation, validate_mv, FnAlgebra, FnElement, TableAlgebra, DEFAULT_BUDGET,
};
use proptest::prelude::*;

/// A product of chains with its elements shuffled.
fn relabelled_product() -> impl Strategy<Value = TableAlgebra> {
    prop::collection::vec(1usize..=3, 1..=3)
        .prop_filter("at most 16 elements", |ns| {
            ns.iter().map(|n| n + 1).product::<usize>() <= 16
        })
        .prop_flat_map(|ns| {
            let a = TableAlgebra::product(
                &ns.iter()
                    .map(|&n| TableAlgebra::chain(n))
                    .collect::<Vec<_>>(),
            );
            let n = a.size();
            (Just(a), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(a, perm)| a.relabel(&perm).unwrap())
}

fn fn_product(ns: &[usize]) -> FnAlgebra {
    FnAlgebra::product(&ns.iter().map(|&n| FnAlgebra::chain(n)).collect::<Vec<_>>()).unwrap()
}

#[test]
fn extensional_algebras_are_closed() {
    for ns in [vec![1], vec![5], vec![1, 2], vec![2, 3], vec![1, 1, 1]] {
        let a = fn_product(&ns);
        let elems = a.elements().unwrap();
        for x in elems {
            assert!(a.contains(&x.neg()));
            for y in elems {
                assert!(a.contains(&x.oplus(y)));
            }
        }
        assert!(validate_mv(a.table().unwrap()).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelled_products_are_mv(a in relabelled_product()) {
        prop_assert!(validate_mv(&a).is_empty());
    }

    #[test]
    fn generation_is_idempotent(picks in prop::collection::vec(0usize..36, 1..4)) {
        let a = fn_product(&[2, 5]);
        let elems = a.elements().unwrap();
        let gens: Vec<FnElement> = picks.iter().map(|&i| elems[i % elems.len()].clone()).collect();
        let sub = generate_subalgebra(a.carrier().to_vec(), gens, DEFAULT_BUDGET).unwrap();
        prop_assert!(validate_mv(sub.table().unwrap()).is_empty());
        let again = generate_subalgebra(a.carrier().to_vec(), sub.elements().unwrap().to_vec(), DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(again.elements().unwrap(), sub.elements().unwrap());
    }

    #[test]
    fn semisimplification_has_trivial_radical(a in relabelled_product()) {
        let rad = radical(&a, DEFAULT_BUDGET).unwrap();
        let q = quotient(&a, &rad).unwrap();
        prop_assert!(validate_mv(&q.table).is_empty());
        prop_assert!(radical(&q.table, DEFAULT_BUDGET).unwrap().is_zero(&q.table));
        let rep = semisimple_representation(&a, DEFAULT_BUDGET).unwrap();
        prop_assert!(rep.embedding.is_injective());
        prop_assert!(rep.embedding.is_homomorphism(&a, rep.algebra.table().unwrap()));
    }

    #[test]
    fn quotients_and_intervals_are_mv(a in relabelled_product()) {
        for i in ideals(&a, DEFAULT_BUDGET).unwrap() {
            prop_assert!(validate_mv(&quotient(&a, &i).unwrap().table).is_empty());
        }
        for bound in 0..a.size() {
            prop_assert!(validate_mv(&interval_algebra(&a, bound).unwrap().table).is_empty());
        }
    }

    #[test]
    fn iso_check_is_symmetric(a in relabelled_product(), b in relabelled_product()) {
        let ab = iso_check(&a, &b, DEFAULT_BUDGET).unwrap().is_isomorphic();
        let ba = iso_check(&b, &a, DEFAULT_BUDGET).unwrap().is_isomorphic();
        prop_assert_eq!(ab, ba);
    }
}

#[test]
fn enumerated_homs_preserve_derived_operations() {
    let algebras = [
        TableAlgebra::chain(2),
        TableAlgebra::chain(4),
        TableAlgebra::boolean(2),
        TableAlgebra::product(&[TableAlgebra::chain(1), TableAlgebra::chain(2)]),
    ];
    for a in &algebras {
        for b in &algebras {
            for h in hom_enumerate(a, b, DEFAULT_BUDGET).unwrap() {
                assert!(h.is_homomorphism(a, b));
                assert!(h.preserves_derived(a, b));
                assert_eq!(h.apply(a.one()), b.one());
            }
        }
    }
}
