use std::sync::Arc;

use proptest::prelude::*;
use typei_core::measure::w_membership;
use typei_core::scalar::rational;
use typei_core::{CentralFunction, GaussianRational, MeasureSpace, NeighborhoodSpec, Rational, Status};

fn space(weights: &[(i64, i64)]) -> Arc<MeasureSpace> {
    Arc::new(
        MeasureSpace::new(
            weights
                .iter()
                .enumerate()
                .map(|(i, &(p, q))| (format!("w{i}"), rational(p, q)))
                .collect(),
        )
        .unwrap(),
    )
}

/// Weights, values (re, im, den), the set A, ε and δ.
type Case = (Vec<(i64, i64)>, Vec<(i64, i64, i64)>, Vec<bool>, (i64, i64), (i64, i64));

fn case() -> impl Strategy<Value = Case> {
    (1usize..=12).prop_flat_map(|n| {
        (
            prop::collection::vec((1i64..=4, 1i64..=3), n),
            prop::collection::vec((-4i64..=4, -4i64..=4, 1i64..=3), n),
            prop::collection::vec(any::<bool>(), n),
            (1i64..=6, 1i64..=3),
            (0i64..=6, 1i64..=2),
        )
    })
}

fn function(s: &Arc<MeasureSpace>, vals: &[(i64, i64, i64)]) -> CentralFunction {
    CentralFunction::new(
        s.clone(),
        vals.iter().map(|&(a, b, q)| GaussianRational::from_fracs(a, q, b, q)).collect(),
    )
    .unwrap()
}

fn nb(s: &MeasureSpace, mask: &[bool], eps: (i64, i64), delta: (i64, i64)) -> NeighborhoodSpec {
    NeighborhoodSpec::new(s.ids_of(mask), rational(eps.0, eps.1), rational(delta.0, delta.1))
}

/// All admissible `B ⊆ A` by enumeration.
fn admissible_sets(f: &CentralFunction, a: &[bool], eps: &Rational) -> Vec<Vec<bool>> {
    let idx: Vec<usize> = (0..a.len()).filter(|&i| a[i]).collect();
    let eps2 = eps * eps;
    (0u32..1 << idx.len())
        .map(|bits| {
            let mut b = vec![false; a.len()];
            for (k, &i) in idx.iter().enumerate() {
                b[i] = bits >> k & 1 == 1;
            }
            b
        })
        .filter(|b| (0..a.len()).all(|i| !b[i] || f.value(i).norm_sqr() <= eps2))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn w_agrees_with_subset_enumeration((w, v, a, eps, delta) in case()) {
        let s = space(&w);
        let f = function(&s, &v);
        let n = nb(&s, &a, eps, delta);
        let verdict = w_membership(&f, &n).unwrap();
        let brute = admissible_sets(&f, &a, &n.eps).iter().any(|b| {
            let rest: Vec<bool> = a.iter().zip(b).map(|(&x, &y)| x && !y).collect();
            s.measure(&rest) <= n.delta
        });
        prop_assert_eq!(verdict.is_in(), brute);
        prop_assert_ne!(verdict.status, Status::Boundary);
    }

    #[test]
    fn maximal_set_contains_every_admissible_set((w, v, a, eps, _d) in case()) {
        let s = space(&w);
        let f = function(&s, &v);
        let e = rational(eps.0, eps.1);
        let best = typei_core::measure::maximal_admissible_set(&f, &a, &e);
        for b in admissible_sets(&f, &a, &e) {
            prop_assert!(b.iter().zip(&best).all(|(&x, &y)| !x || y));
        }
    }

    #[test]
    fn w_is_monotone((w, v, a, eps, delta) in case(), shrink in prop::collection::vec(0i64..=3, 12)) {
        let s = space(&w);
        let f = function(&s, &v);
        // |g| ≤ |f| pointwise
        let g = CentralFunction::from_fn(s.clone(), |i| f.value(i).scale(&rational(shrink[i], 3)));
        let n = nb(&s, &a, eps, delta);
        if w_membership(&f, &n).unwrap().is_in() {
            prop_assert!(w_membership(&g, &n).unwrap().is_in());
        }
    }
}
