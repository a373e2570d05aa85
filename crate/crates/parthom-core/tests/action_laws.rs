//! Partial-action axioms over random prefix-exchange systems, ring
//! laws for the groupoid convolution algebra, and the contracting
//! homotopy identities on sampled actions.

use std::sync::Arc;

use num_bigint::BigInt;
use parthom_core::action::PartialAction;
use parthom_core::algebra::AlgElement;
use parthom_core::intfun::IntFun;
use parthom_core::resolution::{act_left, s0, s1, verify_homotopy};
use parthom_core::sample;
use parthom_core::word::ReducedWord;
use proptest::prelude::*;

fn action_and_words(seed: u64) -> (Arc<PartialAction>, ReducedWord, ReducedWord) {
    let mut rng = sample::rng(seed);
    let g = sample::graph(&mut rng, 3, 4);
    let act = sample::partial_action(&mut rng, &g, 2, 2, 2);
    let u = sample::reduced_word(&mut rng, 2, 3);
    let v = sample::reduced_word(&mut rng, 2, 3);
    (act, u, v)
}

fn elements(seed: u64) -> (Arc<PartialAction>, AlgElement, AlgElement, AlgElement) {
    let mut rng = sample::rng(seed);
    let g = sample::graph(&mut rng, 3, 4);
    let act = sample::partial_action(&mut rng, &g, 2, 2, 2);
    let x = sample::alg_element(&mut rng, &act, 2, 2, 2, 3);
    let y = sample::alg_element(&mut rng, &act, 2, 2, 2, 3);
    let z = sample::alg_element(&mut rng, &act, 2, 2, 2, 3);
    (act, x, y, z)
}

proptest! {
    #[test]
    fn empty_word_acts_as_identity(seed in any::<u64>()) {
        let (act, _, _) = action_and_words(seed);
        let e = ReducedWord::empty();
        prop_assert!(act.theta_word(&e).unwrap().domain().complement().is_empty());
        prop_assert!(act.x_set(&e).unwrap().complement().is_empty());
    }

    #[test]
    fn inversion_inverts_the_map(seed in any::<u64>()) {
        let (act, u, _) = action_and_words(seed);
        prop_assert_eq!(act.theta_word(&u.inverse()).unwrap(), act.theta_word(&u).unwrap().invert());
        prop_assert_eq!(act.x_set(&u.inverse()).unwrap(), act.theta_word(&u).unwrap().domain());
    }

    #[test]
    fn domains_shrink_along_geodesics(seed in any::<u64>()) {
        let (act, u, _) = action_and_words(seed);
        let x_u = act.x_set(&u).unwrap();
        for i in 0..u.len() {
            prop_assert!(x_u.subset_of(&act.x_set(&u.prefix(i)).unwrap()).unwrap());
        }
    }

    #[test]
    fn composites_are_restrictions_of_the_product(seed in any::<u64>()) {
        let (act, u, v) = action_and_words(seed);
        let composite = act.theta_word(&u).unwrap().after(&act.theta_word(&v).unwrap()).unwrap();
        let product = act.theta_word(&u.concat(&v)).unwrap();
        prop_assert_eq!(product.restrict(&composite.domain()).unwrap(), composite.clone());
        if u.concat(&v).len() == u.len() + v.len() {
            prop_assert_eq!(composite, product);
        }
    }

    #[test]
    fn images_respect_the_product_domain(seed in any::<u64>()) {
        let (act, u, v) = action_and_words(seed);
        let theta_u = act.theta_word(&u).unwrap();
        let overlap = theta_u.domain().meet(&act.x_set(&v).unwrap()).unwrap();
        let image = theta_u.image_of(&overlap).unwrap();
        let x_uv = act.x_set(&u.concat(&v)).unwrap();
        prop_assert!(image.subset_of(&x_uv).unwrap());
        prop_assert!(image.subset_of(&act.x_set(&u).unwrap()).unwrap());
        if u.concat(&v).len() == u.len() + v.len() {
            prop_assert_eq!(image, x_uv);
        }
    }

    #[test]
    fn delta_products_transport_overlaps(seed in any::<u64>()) {
        let (act, u, v) = action_and_words(seed);
        let theta_u = act.theta_word(&u).unwrap();
        let overlap = theta_u.domain().meet(&act.x_set(&v).unwrap()).unwrap();
        let expected = AlgElement::from_component(
            &act,
            &u.concat(&v),
            IntFun::indicator(&theta_u.image_of(&overlap).unwrap()),
        ).unwrap();
        let du = AlgElement::delta(&act, &u).unwrap();
        let dv = AlgElement::delta(&act, &v).unwrap();
        prop_assert_eq!(du.convolve(&dv).unwrap(), expected);
    }

    #[test]
    fn delta_against_its_inverse_is_an_idempotent(seed in any::<u64>()) {
        let (act, u, _) = action_and_words(seed);
        let du = AlgElement::delta(&act, &u).unwrap();
        let dinv = AlgElement::delta(&act, &u.inverse()).unwrap();
        let unit_on_range = AlgElement::from_component(
            &act,
            &ReducedWord::empty(),
            IntFun::indicator(&act.x_set(&u).unwrap()),
        ).unwrap();
        prop_assert_eq!(du.convolve(&dinv).unwrap(), unit_on_range);
    }

    #[test]
    fn convolution_is_associative(seed in any::<u64>()) {
        let (_, x, y, z) = elements(seed);
        prop_assert_eq!(
            x.convolve(&y.convolve(&z).unwrap()).unwrap(),
            x.convolve(&y).unwrap().convolve(&z).unwrap()
        );
    }

    #[test]
    fn convolution_distributes_over_addition(seed in any::<u64>()) {
        let (_, x, y, z) = elements(seed);
        prop_assert_eq!(
            x.convolve(&y.add(&z).unwrap()).unwrap(),
            x.convolve(&y).unwrap().add(&x.convolve(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.add(&y).unwrap().convolve(&z).unwrap(),
            x.convolve(&z).unwrap().add(&y.convolve(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn unit_is_neutral(seed in any::<u64>()) {
        let (act, x, _, _) = elements(seed);
        let one = AlgElement::unit(&act);
        prop_assert_eq!(one.convolve(&x).unwrap(), x.clone());
        prop_assert_eq!(x.convolve(&one).unwrap(), x);
    }

    #[test]
    fn additive_structure_is_consistent(seed in any::<u64>()) {
        let (act, x, y, _) = elements(seed);
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.sub(&y).unwrap(), x.add(&y.neg()).unwrap());
        prop_assert_eq!(x.scale(&BigInt::from(-1)), x.neg());
        prop_assert!(x.sub(&x).unwrap().is_zero());
        prop_assert_eq!(AlgElement::zero(&act).add(&x).unwrap(), x);
    }

    #[test]
    fn augmentation_is_a_module_map(seed in any::<u64>()) {
        let (_, x, y, _) = elements(seed);
        prop_assert_eq!(
            x.add(&y).unwrap().r_star(),
            x.r_star().add(&y.r_star()).unwrap()
        );
        prop_assert_eq!(
            x.convolve(&y).unwrap().r_star(),
            x.act_on_unit(&y.r_star()).unwrap()
        );
    }

    #[test]
    fn sections_and_boundaries_are_additive(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let g = sample::graph(&mut rng, 3, 4);
        let act = sample::partial_action(&mut rng, &g, 2, 2, 2);
        let x = sample::alg_element(&mut rng, &act, 2, 2, 2, 3);
        let y = sample::alg_element(&mut rng, &act, 2, 2, 2, 3);
        prop_assert_eq!(
            s1(&x.add(&y).unwrap()).unwrap(),
            s1(&x).unwrap().add(&s1(&y).unwrap()).unwrap()
        );
        let p = sample::p1_element(&mut rng, &act, 2, 2, 2, 3);
        let q = sample::p1_element(&mut rng, &act, 2, 2, 2, 3);
        prop_assert_eq!(
            p.add(&q).unwrap().boundary().unwrap(),
            p.boundary().unwrap().add(&q.boundary().unwrap()).unwrap()
        );
        let f = sample::intfun(&mut rng, &g, 2, 3, 3);
        let h = sample::intfun(&mut rng, &g, 2, 3, 3);
        prop_assert_eq!(
            s0(&act, &f.add(&h).unwrap()),
            s0(&act, &f).add(&s0(&act, &h)).unwrap()
        );
    }

    #[test]
    fn degree_one_is_a_left_module(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let g = sample::graph(&mut rng, 3, 4);
        let act = sample::partial_action(&mut rng, &g, 2, 2, 2);
        let x = sample::alg_element(&mut rng, &act, 2, 2, 2, 3);
        let y = sample::alg_element(&mut rng, &act, 2, 2, 2, 3);
        let p = sample::p1_element(&mut rng, &act, 2, 2, 2, 3);
        prop_assert_eq!(
            act_left(&x.convolve(&y).unwrap(), &p).unwrap(),
            act_left(&x, &act_left(&y, &p).unwrap()).unwrap()
        );
        prop_assert_eq!(act_left(&AlgElement::unit(&act), &p).unwrap(), p.clone());
        prop_assert_eq!(
            act_left(&x, &p).unwrap().boundary().unwrap(),
            x.convolve(&p.boundary().unwrap()).unwrap()
        );
    }
}

#[test]
fn homotopy_identities_hold_on_sampled_actions() {
    for seed in 0..30u64 {
        let mut rng = sample::rng(seed);
        let g = sample::graph(&mut rng, 3, 4);
        let act = sample::partial_action(&mut rng, &g, 2, 2, 2);
        let report = verify_homotopy(&act, 10, seed ^ 0x5eed, 3, 2).unwrap();
        assert!(report.all_passed(), "seed {seed}:\n{report}");
    }
}

#[test]
fn homotopy_identities_hold_with_three_generators() {
    for seed in 0..10u64 {
        let mut rng = sample::rng(0x3000 + seed);
        let g = sample::graph_no_terminal(&mut rng, 2, 4);
        let act = sample::partial_action(&mut rng, &g, 3, 2, 2);
        let report = verify_homotopy(&act, 8, seed, 4, 2).unwrap();
        assert!(report.all_passed(), "seed {seed}:\n{report}");
    }
}
