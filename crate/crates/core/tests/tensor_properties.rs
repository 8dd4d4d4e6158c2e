use mvt_core::mv::{
    generate_subalgebra, interval_algebra, iso_check_fn, FnAlgebra, FnElement, Homomorphism,
    DEFAULT_BUDGET,
};
use mvt_core::tensor::{
    bimorphism_enumerate, iota, tensor_ss, universal_factorization, Bimorphism, Side,
};

fn pairs() -> Vec<(FnAlgebra, FnAlgebra)> {
    let l2 = FnAlgebra::chain(2);
    let l3 = FnAlgebra::chain(3);
    let b4 = FnAlgebra::boolean(2);
    let p = FnAlgebra::product(&[FnAlgebra::chain(1), FnAlgebra::chain(2)]).unwrap();
    vec![
        (l2.clone(), l3.clone()),
        (b4.clone(), l2.clone()),
        (p.clone(), l3.clone()),
        (l3, p),
        (b4.clone(), b4),
    ]
}

#[test]
fn gamma_is_a_bimorphism_and_iotas_embed() {
    for (a, b) in pairs() {
        let t = tensor_ss(&a, &b, DEFAULT_BUDGET).unwrap();
        assert!(t.gamma_bimorphism().unwrap().is_bimorphism().is_ok());
        for side in [Side::A, Side::B] {
            assert!(iota(&t, side).unwrap().is_injective());
        }
    }
}

#[test]
fn tensor_is_symmetric_and_reclosure_is_stable() {
    for (a, b) in pairs() {
        let ab = tensor_ss(&a, &b, DEFAULT_BUDGET).unwrap();
        let ba = tensor_ss(&b, &a, DEFAULT_BUDGET).unwrap();
        assert!(iso_check_fn(&ab.algebra, &ba.algebra, DEFAULT_BUDGET)
            .unwrap()
            .is_isomorphic());
        let gens: Vec<_> = a
            .elements()
            .unwrap()
            .iter()
            .flat_map(|x| {
                b.elements()
                    .unwrap()
                    .iter()
                    .map(move |y| FnElement::outer(x, y))
            })
            .collect();
        let again =
            generate_subalgebra(ab.algebra.carrier().to_vec(), gens, DEFAULT_BUDGET).unwrap();
        assert_eq!(again.elements().unwrap(), ab.algebra.elements().unwrap());
    }
}

#[test]
fn slices_of_bimorphisms_are_interval_homomorphisms_and_factor() {
    let cases = [
        (
            FnAlgebra::chain(2),
            FnAlgebra::chain(2),
            FnAlgebra::chain(4),
        ),
        (
            FnAlgebra::boolean(1),
            FnAlgebra::chain(3),
            FnAlgebra::chain(3),
        ),
        (
            FnAlgebra::chain(2),
            FnAlgebra::boolean(2),
            FnAlgebra::boolean(2),
        ),
    ];
    for (a, b, c) in cases {
        let (ta, tb, tc) = (a.table().unwrap(), b.table().unwrap(), c.table().unwrap());
        let t = tensor_ss(&a, &b, DEFAULT_BUDGET).unwrap();
        let nb = tb.size();
        for table in bimorphism_enumerate(ta, tb, tc, DEFAULT_BUDGET).unwrap() {
            for x in 0..ta.size() {
                let iv = interval_algebra(tc, table[x * nb + tb.one()]).unwrap();
                let slice = (0..nb)
                    .map(|y| iv.local_of(table[x * nb + y]).unwrap())
                    .collect();
                let h = Homomorphism::new(nb, iv.table.size(), slice);
                assert!(h.is_homomorphism(tb, &iv.table));
            }
            let beta = Bimorphism {
                left: ta,
                right: tb,
                target: tc,
                table: table.clone(),
            };
            let f = universal_factorization(&t, &beta, true, DEFAULT_BUDGET).unwrap();
            for x in 0..ta.size() {
                for y in 0..nb {
                    assert_eq!(f.omega_in_target[t.gamma_index(x, y)], table[x * nb + y]);
                }
            }
            assert_eq!(f.agreeing_homs, Some(1));
        }
    }
}
