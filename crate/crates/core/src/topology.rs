//! Membership in the zero neighborhoods `O(A, ε, δ)` and `V(A, ε, δ)`.
//!
//! `x ∈ O(A, ε, δ)` iff the center-valued norm `‖x‖` lies in `W(A, ε, δ)`.
//!
//! `x ∈ V(A, ε, δ)` iff there are a projection `p` and a central projection
//! `z` with `‖xp‖_M ≤ ε`, `z⊥ ∈ W(A, ε, δ)` and `d(zp⊥) ≤ ε z`. In a finite
//! type I model the dimension function is the slot rank, so on each slot of
//! `z` the last condition reads `rank p⊥ ≤ k` with `k = ⌊ε⌋`. Off `z` we may
//! take `p = 0`. On a slot of `z`:
//!
//! * if `rank p⊥ ≤ k` then `p` has rank `≥ n − k`, and by Courant–Fischer
//!   `‖xp‖ ≥ σ_{k+1}(x)` (the max of `|xv|` over a subspace of dimension
//!   `n − k` is at least `σ_{k+1}`);
//! * `p = 1 − Σ_{i≤k} vᵢvᵢ*` over the top right singular vectors attains
//!   `‖xp‖ = σ_{k+1}` (zero when `k ≥ n`).
//!
//! So the best `z` is `{σ_{k+1} ≤ ε}`, and `x ∈ V` iff `χ` of its complement
//! lies in `W(A, ε, δ)`, which is decided exactly. When `ε ≥ 1` that last
//! test is trivially satisfied by `B = A`; when `ε < 1` it says `μ(A∖z) ≤ δ`,
//! and since `k = 0` it coincides with the `O` test.
//!
//! Singular values are floating point; comparisons within `η` of `ε` give
//! [`Status::Boundary`].

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{same_spec, singular_values, vector_norm, AlgebraElement, AlgebraSpec};
use crate::error::Result;
use crate::measure::{
    w_membership, CentralFunction, MembershipVerdict, NeighborhoodSpec, Status, Witness,
};
use crate::random::{random_element, stream_rng, EntryDist};
use crate::scalar::{rational_to_f64, GaussianRational, Rational};
use std::sync::Arc;

/// Width of the undecided band around `ε`.
pub const DEFAULT_ETA: f64 = 1e-9;

fn status_from(strict: bool, loose: bool) -> Status {
    match (strict, loose) {
        (true, _) => Status::In,
        (false, false) => Status::Out,
        (false, true) => Status::Boundary,
    }
}

fn check_space(x: &AlgebraElement, nb: &NeighborhoodSpec) -> Result<Vec<bool>> {
    nb.resolve(x.spec().center_space())
}

pub fn o_membership(x: &AlgebraElement, nb: &NeighborhoodSpec) -> Result<MembershipVerdict> {
    o_membership_with(x, nb, DEFAULT_ETA)
}

pub fn o_membership_with(x: &AlgebraElement, nb: &NeighborhoodSpec, eta: f64) -> Result<MembershipVerdict> {
    let a = check_space(x, nb)?;
    let sigma = vector_norm(x).values;
    o_from_norms(x.spec(), &a, &sigma, nb, eta)
}

fn o_from_norms(
    spec: &AlgebraSpec,
    a: &[bool],
    sigma: &[f64],
    nb: &NeighborhoodSpec,
    eta: f64,
) -> Result<MembershipVerdict> {
    let space = spec.center_space();
    let eps = nb.eps_f64();
    let delta = rational_to_f64(&nb.delta);
    let rest = |bound: f64| -> (Vec<bool>, f64) {
        let b: Vec<bool> = a.iter().zip(sigma).map(|(&ina, &s)| ina && s <= bound).collect();
        let outside: Vec<bool> = a.iter().zip(&b).map(|(&x, &y)| x && !y).collect();
        (b, rational_to_f64(&space.measure(&outside)))
    };
    let (b_strict, m_strict) = rest(eps - eta);
    let (_, m_loose) = rest(eps + eta);
    let status = status_from(m_strict <= delta, m_loose <= delta);
    Ok(MembershipVerdict {
        status,
        witness: (status == Status::In).then(|| Witness::Set(space.ids_of(&b_strict))),
        margin: delta - m_strict,
    })
}

/// `k = ⌊ε⌋`: the largest rank `p⊥` may have on `z`.
pub fn rank_budget(eps: &Rational) -> usize {
    let k = eps.floor().to_integer();
    usize::try_from(k).unwrap_or(0)
}

/// `σ_{k+1}` of each slot (zero when `k` reaches the degree).
pub fn kth_singular_values(x: &AlgebraElement, k: usize) -> Vec<f64> {
    x.slots()
        .par_iter()
        .map(|m| singular_values(m).get(k).copied().unwrap_or(0.0))
        .collect()
}

pub fn v_membership(x: &AlgebraElement, nb: &NeighborhoodSpec) -> Result<MembershipVerdict> {
    v_membership_with(x, nb, DEFAULT_ETA)
}

pub fn v_membership_with(x: &AlgebraElement, nb: &NeighborhoodSpec, eta: f64) -> Result<MembershipVerdict> {
    check_space(x, nb)?;
    let space = x.spec().center_space();
    let k = rank_budget(&nb.eps);
    let sigma = kth_singular_values(x, k);
    let eps = nb.eps_f64();

    let complement_in_w = |bound: f64| -> Result<(Vec<bool>, MembershipVerdict)> {
        let z: Vec<bool> = sigma.iter().map(|&s| s <= bound).collect();
        let chi = CentralFunction::from_fn(space.clone(), |s| {
            if z[s] {
                GaussianRational::zero()
            } else {
                GaussianRational::one()
            }
        });
        Ok((z, w_membership(&chi, nb)?))
    };
    let (z, strict) = complement_in_w(eps - eta)?;
    let (_, loose) = complement_in_w(eps + eta)?;
    let status = status_from(strict.is_in(), loose.is_in());

    let witness = (status == Status::In).then(|| Witness::Projections {
        p: witness_projection(x, &z, k),
        z: space.ids_of(&z),
    });
    Ok(MembershipVerdict {
        status,
        witness,
        margin: strict.margin,
    })
}

/// `1 − Σ_{i≤k} vᵢvᵢ*` on slots of `z`, `0` elsewhere.
fn witness_projection(x: &AlgebraElement, z: &[bool], k: usize) -> Vec<DMatrix<Complex64>> {
    x.slots()
        .iter()
        .zip(z)
        .map(|(m, &in_z)| {
            let n = m.rows();
            if !in_z {
                return DMatrix::zeros(n, n);
            }
            let mut p = DMatrix::<Complex64>::identity(n, n);
            if k == 0 || m.is_zero() {
                return p;
            }
            if k >= n {
                return DMatrix::zeros(n, n);
            }
            let svd = m.to_complex().svd(false, true);
            let v_t = svd.v_t.expect("requested");
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
            for &i in order.iter().take(k) {
                // rows of v_t are v_i*
                let row = v_t.row(i);
                let v = row.adjoint();
                p -= &v * v.adjoint();
            }
            p
        })
        .collect()
}

/// Measure-weighted distance `Σ μ(s)·min(1, ‖x−y‖(s)) / Σ μ(s)`.
pub fn lm_metric(x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
    same_spec(x.spec(), y.spec())?;
    let d = vector_norm(&(x - y)).values;
    let space = x.spec().center_space();
    let total = rational_to_f64(&space.total_measure());
    let sum: f64 = d
        .iter()
        .enumerate()
        .map(|(s, v)| rational_to_f64(space.weight(s)) * v.min(1.0))
        .sum();
    // rounding can push a saturated average just past 1
    Ok((sum / total).min(1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardFailure {
    pub sample: u64,
    pub element: AlgebraElement,
    pub o_status: Status,
    pub v_status: Status,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: String,
    pub samples: u64,
    pub hard_failures: Vec<HardFailure>,
    pub boundary_count: u64,
    pub seed: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.hard_failures.is_empty()
    }
}

/// Element for sample `i`: random fractional entries, some zero slots, and
/// an overall scale `1/m` so that norms straddle typical `ε`.
pub fn sample_element(rng: &mut ChaCha8Rng, spec: &Arc<AlgebraSpec>) -> AlgebraElement {
    let dist = EntryDist::fractions(3, 4).with_zero_slots(0.2);
    let x = random_element(rng, spec, &dist);
    let m: i64 = rng.random_range(1..=8);
    x.scale(&GaussianRational::from_fracs(1, m, 0, 1))
}

fn run_suite(
    name: &str,
    spec: &Arc<AlgebraSpec>,
    nb: &NeighborhoodSpec,
    samples: u64,
    seed: u64,
    eta: f64,
    hard: impl Fn(Status, Status) -> bool + Sync,
) -> Result<Report> {
    nb.resolve(spec.center_space())?;
    let outcomes: Vec<(u64, AlgebraElement, Status, Status)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let x = sample_element(&mut rng, spec);
            let o = o_membership_with(&x, nb, eta)?.status;
            let v = v_membership_with(&x, nb, eta)?.status;
            Ok((i, x, o, v))
        })
        .collect::<Result<_>>()?;
    let mut boundary_count = 0;
    let mut hard_failures = Vec::new();
    for (i, x, o, v) in outcomes {
        if o == Status::Boundary || v == Status::Boundary {
            boundary_count += 1;
        }
        if hard(o, v) {
            hard_failures.push(HardFailure {
                sample: i,
                element: x,
                o_status: o,
                v_status: v,
            });
        }
    }
    Ok(Report {
        suite: name.to_string(),
        samples,
        hard_failures,
        boundary_count,
        seed,
    })
}

/// Checks `O ⊆ V`: an `O`-In sample must never be `V`-Out.
pub fn inclusion_test(spec: &Arc<AlgebraSpec>, nb: &NeighborhoodSpec, samples: u64, seed: u64) -> Result<Report> {
    inclusion_test_with(spec, nb, samples, seed, DEFAULT_ETA)
}

pub fn inclusion_test_with(
    spec: &Arc<AlgebraSpec>,
    nb: &NeighborhoodSpec,
    samples: u64,
    seed: u64,
    eta: f64,
) -> Result<Report> {
    run_suite("inclusion", spec, nb, samples, seed, eta, |o, v| {
        o == Status::In && v == Status::Out
    })
}

/// Checks `O = V` for `ε < 1`: no sample is In for one and Out for the other.
pub fn equality_test(spec: &Arc<AlgebraSpec>, nb: &NeighborhoodSpec, samples: u64, seed: u64) -> Result<Report> {
    equality_test_with(spec, nb, samples, seed, DEFAULT_ETA)
}

pub fn equality_test_with(
    spec: &Arc<AlgebraSpec>,
    nb: &NeighborhoodSpec,
    samples: u64,
    seed: u64,
    eta: f64,
) -> Result<Report> {
    if nb.eps < Rational::one() {
        // both predicates then threshold σ₁ at ε
        assert_eq!(rank_budget(&nb.eps), 0);
    }
    run_suite("equality", spec, nb, samples, seed, eta, |o, v| {
        matches!((o, v), (Status::In, Status::Out) | (Status::Out, Status::In))
    })
}

/// Validates the parameters against a spec without evaluating anything.
pub fn check_neighborhood(spec: &AlgebraSpec, nb: &NeighborhoodSpec) -> Result<()> {
    nb.resolve(spec.center_space()).map(|_| ())
}
