use bsideal::algebra::rational::rat;
use bsideal::algebra::{Monomial, MultiPoly, Signature};
use bsideal::groebner::{left_buchberger, Budget, TermOrder};
use bsideal::io::parse::{parse_poly, parse_tuple};
use bsideal::locus::{exp_image, translation_invariant, HyperplaneComponent};
use bsideal::pipeline::Annihilator;
use bsideal::weyl::{WeylElement, WeylSignature};
use proptest::prelude::*;

fn arb_element(sig: WeylSignature, max_exp: u32, max_terms: usize) -> impl Strategy<Value = WeylElement> {
    let nv = sig.num_vars();
    prop::collection::vec((prop::collection::vec(0..=max_exp, nv), -3i64..4), 0..=max_terms).prop_map(move |ts| {
        WeylElement::from_terms(
            &sig,
            ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e), rat(c, 1))),
        )
    })
}

fn cusp_annihilator() -> Annihilator {
    Annihilator::compute(&parse_tuple(&["x^2+y^3"]).unwrap(), &Budget::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Left combinations of generators reduce to zero against the basis.
    #[test]
    fn membership_is_sound(
        u in arb_element(WeylSignature::new(&["x", "y"], 1, false).unwrap(), 2, 3),
        v in arb_element(WeylSignature::new(&["x", "y"], 1, false).unwrap(), 2, 3),
    ) {
        let ann = cusp_annihilator();
        let sig = ann.signature().clone();
        let gb = left_buchberger(ann.generators(), &TermOrder::degrevlex(&sig), &Budget::default()).unwrap();
        let g = ann.generators();
        let p = &(&u.reembed(&sig).unwrap() * &g[0]) + &(&v.reembed(&sig).unwrap() * &g[1]);
        prop_assert!(gb.contains(&p).unwrap());
        // adding a unit moves the element out
        let q = &p + &WeylElement::one(&sig);
        prop_assert!(!gb.contains(&q).unwrap());
    }

    #[test]
    fn exp_translation_invariance(a in prop::collection::vec(0i64..7, 1..4), b in 1i64..40, k in -5i64..=5) {
        prop_assume!(a.iter().any(|&x| x > 0));
        let h = HyperplaneComponent::new(a.clone(), b).unwrap();
        prop_assert!(translation_invariant(&h, k));
        let g = a.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        if let Ok(shifted) = HyperplaneComponent::new(a, b + g * k) {
            prop_assert_eq!(exp_image(&shifted), exp_image(&h));
        }
    }

    #[test]
    fn parser_round_trip(ts in prop::collection::vec(
        (prop::collection::vec(0u32..4, 3), -9i64..10, 1i64..6), 0..7)
    ) {
        let sig = Signature::x_vars(&["x", "y", "z"]).unwrap();
        let p = MultiPoly::from_terms(&sig, ts.into_iter().map(|(e, c, d)| (Monomial::from_exponents(e), rat(c, d))));
        let back = parse_poly(&p.to_string()).unwrap().embed_by_name(&sig).unwrap();
        prop_assert_eq!(back, p);
    }
}
