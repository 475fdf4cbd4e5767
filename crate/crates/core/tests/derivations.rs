mod common;

use proptest::prelude::*;
use weighted_algebroids::{families, BiWeight, Element};

use common::{random_bihomogeneous, random_element, rng, valid_shipped_specs};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `d(ab) = d(a) b + (−1)^{|a|} a d(b)`.
    #[test]
    fn ce_differential_obeys_leibniz(seed in any::<u64>()) {
        let spec = families::e7();
        let t = spec.table().clone();
        let d = spec.ce_differential();
        let mut r = rng(seed);
        let (wa, a) = random_bihomogeneous(&t, &mut r);
        let b = random_element(&t, &mut r, 3);
        let lhs = d.apply(&(&a * &b)).unwrap();
        let mut rhs = &d.apply(&a).unwrap() * &b;
        let tail = &a * &d.apply(&b).unwrap();
        if wa.form_degree % 2 == 1 {
            rhs -= &tail;
        } else {
            rhs += &tail;
        }
        prop_assert_eq!(lhs, rhs);
    }

    /// The graded commutator `[d, d] = 2 d²` vanishes exactly when `d` is
    /// homological, and agrees with `d∘d` on random elements.
    #[test]
    fn commutator_matches_composition(seed in any::<u64>()) {
        let mut r = rng(seed);
        for (_, spec) in common::shipped_specs() {
            let d = spec.ce_differential();
            let dd = d.graded_commutator(d).unwrap();
            prop_assert_eq!(dd.is_zero(), d.is_homological().unwrap().passed());
            let e = random_element(spec.table(), &mut r, 3);
            let twice = d.apply(&d.apply(&e).unwrap()).unwrap();
            prop_assert_eq!(dd.apply(&e).unwrap(), &twice + &twice);
        }
    }

    #[test]
    fn raises_form_degree_by_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        for (name, spec) in valid_shipped_specs() {
            let (w, e) = random_bihomogeneous(spec.table(), &mut r);
            let image = spec.ce_differential().apply(&e).unwrap();
            prop_assert!(
                image.is_zero() || image.is_bi_homogeneous_of(BiWeight::new(w.h_weight, w.form_degree + 1)),
                "{}: {}", name, image
            );
        }
    }
}

#[test]
fn constants_are_killed() {
    for (_, spec) in common::shipped_specs() {
        let one = Element::one(spec.table());
        assert!(spec.ce_differential().apply(&one).unwrap().is_zero());
    }
}
