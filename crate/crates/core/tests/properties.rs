//! Randomized checks of the structural invariants.

use std::sync::Arc;

use proptest::prelude::*;

use postlie::algebra::{
    gl, gl_triangular, post_lie_from_r, sl, sl_triangular, LieAlgebra, LinearEndo,
};
use postlie::factor::RMatrixSetting;
use postlie::magnus::{chi_series, chi_series_with, exp_sides, ode_residual};
use postlie::partition::{PhiMap, SetPartition};
use postlie::scalar;
use postlie::{Enveloping, Exec, GVector, Lifted, Monomial, PostLieAlgebra, Series, UeaElement};

fn lifted(lie: LieAlgebra, r: &LinearEndo, trunc: usize) -> Arc<Lifted> {
    let lie = Arc::new(lie);
    let p = post_lie_from_r(&lie, r).unwrap();
    Arc::new(Lifted::new(PostLieAlgebra::new(lie, p).unwrap(), trunc))
}

fn vector(dim: usize) -> impl Strategy<Value = GVector> {
    prop::collection::vec(-3i64..=3, dim).prop_map(|v| GVector::from_ints(&v))
}

/// Up to three PBW terms of degree ≤ `max` with small integer coefficients.
fn element(dim: usize, max: usize, trunc: usize) -> impl Strategy<Value = UeaElement> {
    prop::collection::vec((prop::collection::vec(0..dim, 0..=max), -2i64..=2), 1..=3).prop_map(
        move |terms| {
            UeaElement::from_terms(
                terms
                    .into_iter()
                    .map(|(w, c)| (Monomial::from_indices(&w), scalar::int(c))),
                trunc,
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(x in vector(4), y in vector(4), z in vector(4), c in -3i64..=3) {
        let g = gl(2);
        let xy = g.bracket(&x, &y).unwrap();
        prop_assert_eq!(&xy, &-g.bracket(&y, &x).unwrap());
        let lhs = g.bracket(&(x.scale(&scalar::int(c)) + z.clone()), &y).unwrap();
        prop_assert_eq!(lhs, xy.scale(&scalar::int(c)) + g.bracket(&z, &y).unwrap());
    }

    #[test]
    fn enveloping_product_is_associative(a in element(3, 2, 6), b in element(3, 2, 6), c in element(3, 2, 6)) {
        let env = Enveloping::with_trunc(Arc::new(sl(2)), 6);
        let lhs = env.mul(&env.mul(&a, &b).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs, env.mul(&a, &env.mul(&b, &c).unwrap()).unwrap());
    }

    #[test]
    fn coproduct_is_multiplicative(a in element(3, 2, 4), b in element(3, 2, 4)) {
        let env = Enveloping::with_trunc(Arc::new(sl(2)), 4);
        let lhs = env.coproduct(&env.mul(&a, &b).unwrap());
        let rhs = env.tensor_mul(&env.coproduct(&a), &env.coproduct(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_is_an_anti_morphism(a in element(4, 2, 4), b in element(4, 2, 4)) {
        let env = Enveloping::with_trunc(Arc::new(gl(2)), 4);
        let lhs = env.antipode(&env.mul(&a, &b).unwrap());
        prop_assert_eq!(lhs, env.mul(&env.antipode(&b), &env.antipode(&a)).unwrap());
    }

    #[test]
    fn star_is_associative(a in element(3, 2, 5), b in element(3, 1, 5), c in element(3, 2, 5)) {
        let l = lifted(sl(2), &sl_triangular(2), 5);
        let lhs = l.star(&l.star(&a, &b).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs, l.star(&a, &l.star(&b, &c).unwrap()).unwrap());
    }

    #[test]
    fn triangle_composes_through_star(a in element(4, 1, 4), b in element(4, 1, 4), c in element(4, 2, 4)) {
        let l = lifted(gl(2), &gl_triangular(2), 4);
        let lhs = l.triangle(&a, &l.triangle(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, l.triangle(&l.star(&a, &b).unwrap(), &c).unwrap());
    }

    #[test]
    fn phi_round_trips(a in element(4, 3, 4)) {
        let phi = PhiMap::new(lifted(gl(2), &gl_triangular(2), 4));
        prop_assert_eq!(phi.phi_element(&phi.phi_inverse(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn chi_is_primitive_and_solves_the_identities(x in vector(4)) {
        let l = lifted(gl(2), &gl_triangular(2), 5);
        let chi = chi_series(&l, &x, 5).unwrap();
        let (lhs, rhs) = exp_sides(&l, &chi).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(ode_residual(&l, &chi).unwrap().is_zero());
        prop_assert_eq!(chi_series_with(&l, &x, 5, Exec::Sequential).unwrap(), chi);
    }

    #[test]
    fn f_agrees_with_phi(w in prop::collection::vec(0usize..3, 0..=3)) {
        let s = RMatrixSetting::new(Arc::new(sl(2)), sl_triangular(2), 4).unwrap();
        let letters: Vec<GVector> = w.iter().map(|&i| GVector::basis(3, i)).collect();
        prop_assert_eq!(s.f_word(&letters).unwrap(), s.phi().phi(&letters).unwrap());
    }

    #[test]
    fn exp_log_round_trip(x in vector(3)) {
        let env = Enveloping::with_trunc(Arc::new(sl(2)), 5);
        let s = Series::monomial(env.vector(&x).unwrap(), 1, 5);
        let back = env.log_trunc(&env.exp_series(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn partitions_are_canonical(growth in prop::collection::vec(0usize..4, 1..=6)) {
        let n = growth.len();
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); 4];
        for (i, &b) in growth.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        blocks.retain(|b| !b.is_empty());
        let a = SetPartition::new(blocks.clone()).unwrap();
        let mut shuffled: Vec<Vec<usize>> = blocks.into_iter().rev().map(|mut b| { b.reverse(); b }).collect();
        shuffled.rotate_left(1);
        prop_assert_eq!(&SetPartition::new(shuffled).unwrap(), &a);
        prop_assert_eq!(a.n(), n);
        prop_assert!(a.blocks().windows(2).all(|w| w[0].iter().max() < w[1].iter().max()));
    }
}
