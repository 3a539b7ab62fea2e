use proptest::prelude::*;
use typei_core::algebra::{central_cover, minimal_central_projections};
use typei_core::automorphism::{
    compose, evaluate_word, invert, make_central, make_inner, revalidate, validate,
};
use typei_core::decompose::{decompose, is_canonical};
use typei_core::random::*;
use typei_core::{AlgebraElement, Generator};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn words_validate_and_preserve_center(seed in any::<u64>(), len in 1usize..=4) {
        let mut rng = seeded_rng(seed);
        let spec = random_spec(&mut rng, "a", &[1, 2, 3], 3).unwrap();
        let word = random_word(&mut rng, &spec, len, &EntryDist::integers(2));
        let t = evaluate_word(spec.clone(), &word).unwrap();
        prop_assert!(revalidate(&t).is_ok());

        let f = random_central_function(&mut rng, &spec, &EntryDist::integers(3));
        let z = AlgebraElement::from_central(spec.clone(), &f).unwrap();
        prop_assert!(t.apply(&z).unwrap().is_central());

        // minimal central projections go bijectively to minimal central projections
        let mins = minimal_central_projections(&spec);
        let mut hit = vec![false; mins.len()];
        for m in &mins {
            let img = t.apply(m).unwrap();
            let k = mins.iter().position(|n| n == &img);
            prop_assert!(k.is_some());
            let k = k.unwrap();
            prop_assert!(!hit[k]);
            hit[k] = true;
        }
    }

    #[test]
    fn decomposition_reconstructs(seed in any::<u64>(), len in 1usize..=4) {
        let mut rng = seeded_rng(seed);
        let spec = random_spec(&mut rng, "a", &[1, 2, 3], 3).unwrap();
        let word = random_word(&mut rng, &spec, len, &EntryDist::integers(2));
        let t = evaluate_word(spec.clone(), &word).unwrap();
        let d = decompose(&t).unwrap();
        prop_assert!(is_canonical(&d.a));
        let rebuilt = compose(&make_inner(&d.a).unwrap(), &make_central(&d.phi)).unwrap();
        prop_assert_eq!(rebuilt, t.clone());
        // degrees are never mixed
        for s in 0..spec.num_slots() {
            prop_assert_eq!(spec.slot(s).degree, spec.slot(d.phi.image(s)).degree);
        }
        // an inverse is an inverse
        let id = compose(&t, &invert(&t)).unwrap();
        prop_assert!(id.basis_images().iter().enumerate().all(|(b, x)| x == &AlgebraElement::basis(spec.clone(), b)));
    }

    #[test]
    fn central_parts_compose(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let spec = random_spec(&mut rng, "a", &[1, 2], 4).unwrap();
        let phi = random_central_automorphism(&mut rng, &spec);
        let psi = random_central_automorphism(&mut rng, &spec);
        let t = compose(&make_central(&phi), &make_central(&psi)).unwrap();
        prop_assert_eq!(decompose(&t).unwrap().phi, phi.compose(&psi).unwrap());
    }

    #[test]
    fn moved_center_is_an_obstruction(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let spec = random_spec(&mut rng, "a", &[1, 2, 3], 3).unwrap();
        let word = random_word(&mut rng, &spec, 3, &EntryDist::integers(2));
        let t = evaluate_word(spec.clone(), &word).unwrap();
        let d = decompose(&t).unwrap();
        let mins = minimal_central_projections(&spec);
        if !d.phi.is_identity() {
            prop_assert!(mins.iter().any(|z| &t.apply(z).unwrap() != z));
        }
        // inner automorphisms fix every minimal central projection
        let a = random_invertible(&mut rng, &spec, &EntryDist::integers(2));
        let ta = make_inner(&a).unwrap();
        prop_assert!(mins.iter().all(|z| &ta.apply(z).unwrap() == z));
    }

    #[test]
    fn full_cover_is_preserved(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let spec = random_spec(&mut rng, "a", &[1, 2, 3], 3).unwrap();
        let word = random_word(&mut rng, &spec, 3, &EntryDist::integers(2));
        let t = evaluate_word(spec.clone(), &word).unwrap();
        let x = random_invertible(&mut rng, &spec, &EntryDist::integers(2));
        prop_assert!(central_cover(&x).is_full());
        prop_assert!(central_cover(&t.apply(&x).unwrap()).is_full());
    }

    #[test]
    fn corrupted_tables_are_rejected(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let spec = random_spec(&mut rng, "a", &[2, 3], 2).unwrap();
        let word = random_word(&mut rng, &spec, 2, &EntryDist::integers(2));
        let t = evaluate_word(spec.clone(), &word).unwrap();
        let mut images = t.basis_images().to_vec();
        let k = (seed as usize) % images.len();
        images[k] = AlgebraElement::zero(spec.clone());
        let report = validate(spec.clone(), images, None).unwrap_err();
        prop_assert!(!report.is_valid());
        prop_assert!(report.rank < report.dim);
    }
}

#[test]
fn word_with_mismatched_table_is_reported() {
    let mut rng = seeded_rng(3);
    let spec = random_spec(&mut rng, "a", &[2], 2).unwrap();
    let a = random_invertible(&mut rng, &spec, &EntryDist::integers(2));
    let t = make_inner(&a).unwrap();
    let other = vec![Generator::Inner(AlgebraElement::one(spec.clone()))];
    let a_is_scalar = (0..spec.num_slots()).all(|s| {
        let m = a.slot(s);
        m.first_nonzero().is_some_and(|(_, c)| m == &typei_core::QMatrix::scalar(m.rows(), c.clone()))
    });
    let report = validate(spec, t.basis_images().to_vec(), Some(other));
    assert_eq!(report.is_ok(), a_is_scalar);
}
