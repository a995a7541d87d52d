mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use vgbs::fixtures;
use vgbs::gbs::{build_reachability_instance, reachability_closure};
use vgbs::linalg::{AffineLattice, IntMatrix, Lattice};
use vgbs::{Group, Word};

fn fixture(i: usize) -> (&'static str, Group) {
    fixtures::all().swap_remove(i % 7)
}

fn seeded_word(g: &Group, seed: u64, len: usize) -> Word {
    common::random_word(g, &mut common::rng(seed), len, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn word_times_inverse_is_trivial(f in 0usize..7, seed: u64, len in 0usize..12) {
        let (_, g) = fixture(f);
        let w = seeded_word(&g, seed, len);
        prop_assert!(g.is_trivial(&w.mul(&g.inverse(&w))));
        prop_assert!(g.is_trivial(&g.inverse(&w).mul(&w)));
    }

    #[test]
    fn simplify_preserves_the_element(f in 0usize..7, seed: u64, len in 0usize..12) {
        let (_, g) = fixture(f);
        let w = seeded_word(&g, seed, len);
        let s = g.simplify(&w);
        prop_assert!(g.equal(&w, &s));
        prop_assert!(s.len() <= g.normalize(&w).len());
    }

    #[test]
    fn reduced_forms_are_reduced(f in 0usize..7, seed: u64, len in 0usize..12) {
        let (_, g) = fixture(f);
        let w = seeded_word(&g, seed, len);
        let r = g.reduced_form(&w);
        prop_assert!(g.equal(&w, &g.form_to_word(&r)));
        prop_assert_eq!(g.is_trivial(&w), r.is_identity_form());
    }

    #[test]
    fn translation_length_is_a_class_function(f in 0usize..7, seed: u64, len in 1usize..8, clen in 0usize..6) {
        let (_, g) = fixture(f);
        let w = seeded_word(&g, seed, len);
        let c = seeded_word(&g, seed ^ 0x5a5a, clen);
        prop_assert_eq!(g.translation_length(&w), g.translation_length(&g.conjugate_by(&c, &w)));
    }

    #[test]
    fn translation_length_of_powers(f in 0usize..7, seed: u64, len in 1usize..6, n in -3i64..=3) {
        let (_, g) = fixture(f);
        let w = seeded_word(&g, seed, len);
        let l = g.translation_length(&w);
        prop_assert_eq!(g.translation_length(&g.pow(&w, n)), n.unsigned_abs() as usize * l);
    }

    #[test]
    fn axis_is_translated_by_its_element(f in 0usize..7, seed: u64, n in -4i64..=4) {
        let (_, g) = fixture(f);
        if f % 7 == 4 {
            return Ok(());
        }
        let h = common::random_hyperbolic(&g, &mut common::rng(seed), 5);
        let axis = g.axis(&h).unwrap();
        let l = axis.length as i64;
        let x = axis.vertex_at(&g, n);
        prop_assert!(g.on_characteristic_space(&h, &x));
        prop_assert!(g.same_vertex(&g.act(&h, &x), &axis.vertex_at(&g, n + l)));
        prop_assert_eq!(axis.position_of(&g, &x), Some(n));
    }

    #[test]
    fn conjugates_are_found(f in 0usize..7, seed: u64, clen in 0usize..6) {
        let (_, g) = fixture(f);
        if f % 7 == 4 {
            return Ok(());
        }
        let mut rng = common::rng(seed);
        let h = common::random_hyperbolic(&g, &mut rng, 5);
        let c = common::random_word(&g, &mut rng, clen, 2);
        let b = g.simplify(&g.conjugate_by(&c, &h));
        let ans = g.conjugate_hyperbolic(&h, &b).unwrap();
        let x = ans.witness().expect("conjugate");
        prop_assert!(g.equal(&g.conjugate_by(x, &h), &b));
    }

    #[test]
    fn centralizer_generators_commute(f in 0usize..7, seed: u64) {
        let (_, g) = fixture(f);
        if f % 7 == 4 {
            return Ok(());
        }
        let h = common::random_hyperbolic(&g, &mut common::rng(seed), 5);
        let c = g.centralizer_hyperbolic(&h).unwrap();
        prop_assert!(g.translation_length(&h) % c.h_prime_length == 0);
        for z in c.e_elements(&g).iter().chain([&c.h_prime]) {
            prop_assert!(g.is_trivial(&g.commutator(z, &h)));
        }
    }

    #[test]
    fn shapes_are_conjugation_equivariant(f in 0usize..7, seed: u64) {
        let (_, g) = fixture(f);
        if f % 7 == 4 || f % 7 == 5 {
            return Ok(());
        }
        let mut rng = common::rng(seed);
        let h = common::random_hyperbolic(&g, &mut rng, 4);
        let x = common::random_elliptic(&g, &mut rng, 3);
        let s = g.classify_intersection(&x, &h).unwrap();
        // Conjugating both by h keeps the kind and the axis positions.
        let s2 = g.classify_intersection(&g.conjugate_by(&h, &x), &h).unwrap();
        prop_assert_eq!(s.kind(), s2.kind());
        if let (Some(p), Some(q)) = (s.anchor(), s2.anchor()) {
            prop_assert_eq!(q - p, g.translation_length(&h) as i64);
        }
    }

    #[test]
    fn gbs_reachability_is_symmetric(p in 1i64..5, q in 1i64..5, m in 1i64..20, n in 1i64..20) {
        let g = Group::new(vgbs::VGBSGraph::new(fixtures::baumslag_solitar_spec(p, q)).unwrap());
        let inst = build_reachability_instance(g.graph(), &BigInt::from(m), 0, &BigInt::from(n), 0).unwrap();
        let Some(from_m) = reachability_closure(&inst.transitions, &inst.source, 2000) else { return Ok(()) };
        let Some(from_n) = reachability_closure(&inst.transitions, &inst.target, 2000) else { return Ok(()) };
        prop_assert_eq!(from_m.contains(&inst.target), from_n.contains(&inst.source));
    }

    #[test]
    fn lattice_intersection_matches_membership(
        gens_a in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 2), 1..3),
        gens_b in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 2), 1..3),
        x in -12i64..=12, y in -12i64..=12,
    ) {
        let to_big = |v: &Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
            v.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
        };
        let a = Lattice::from_generators(2, &to_big(&gens_a));
        let b = Lattice::from_generators(2, &to_big(&gens_b));
        let p = vec![BigInt::from(x), BigInt::from(y)];
        prop_assert_eq!(a.intersect(&b).contains(&p), a.contains(&p) && b.contains(&p));
        prop_assert_eq!(a.sum(&b).contains(&p) || !a.contains(&p), true);
        let shifted = AffineLattice::new(vec![BigInt::from(1), BigInt::from(0)], a.clone());
        let img = shifted.map_affine(&IntMatrix::identity(2), &[BigInt::from(0), BigInt::from(0)]);
        prop_assert_eq!(img.contains(&p), shifted.contains(&p));
    }
}

#[test]
fn moduli_of_powers() {
    let mut rng = common::rng(11);
    for (_, g) in fixtures::all().into_iter().filter(|(n, _)| *n != "z2") {
        for _ in 0..3 {
            let h = common::random_hyperbolic(&g, &mut rng, 4);
            let m = g.compute_modulus(&h).unwrap();
            let k = rng.gen_range(2..=3);
            let mk = g.compute_modulus_at(&g.pow(&h, k), &m.basepoint).unwrap();
            for x in m.space.basis() {
                let mut y = x.clone();
                for _ in 0..k {
                    y = m.apply(&y).unwrap();
                }
                assert_eq!(mk.apply(x), Some(y));
            }
        }
    }
}
