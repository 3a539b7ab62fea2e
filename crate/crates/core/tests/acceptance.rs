//! Acceptance gate: twelve criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use nalgebra::Matrix2;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use typei_core::algebra::{
    abelian_annihilator_test, central_cover, dimension, equivalent, vector_norm,
};
use typei_core::automorphism::{compose, evaluate_word, make_central, make_inner};
use typei_core::decompose::{classify_band_preserving, decompose, skolem_noether_slot, MatrixUnitImages};
use typei_core::random::*;
use typei_core::scalar::{rational, rational_to_f64};
use typei_core::topology::{equality_test, inclusion_test, o_membership, v_membership};
use typei_core::{
    AlgebraElement, AlgebraSpec, Block, CentralFunction, Classification, Generator,
    GaussianRational as Q, MeasureSpace, NeighborhoodSpec, ProjectionElement, QMatrix, Rational,
    Status,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: usize, detail: String) -> Outcome {
    Outcome {
        pass: failures == 0,
        detail,
    }
}

const SEED: u64 = 0x5eed_0001;

// ---------------------------------------------------------------------------
// shared oracles

/// Net slot map of a word: `m₁ ∘ m₂ ∘ …` over its central generators.
fn net_map(spec: &AlgebraSpec, word: &[Generator]) -> Vec<usize> {
    let mut net: Vec<usize> = (0..spec.num_slots()).collect();
    for g in word.iter().rev() {
        if let Generator::Central(phi) = g {
            net = net.iter().map(|&s| phi.map()[s]).collect();
        }
    }
    net
}

/// Divide each slot by its first nonzero entry in row-major order.
fn leading_normalized(a: &AlgebraElement) -> AlgebraElement {
    a.map_slots(|_, m| {
        let lead = m
            .entries()
            .iter()
            .find(|e| !e.is_zero())
            .expect("invertible slot")
            .clone();
        m.scale(&lead.inv().unwrap())
    })
}

/// Rank of a projection is its trace.
fn trace_rank(p: &ProjectionElement) -> Vec<Rational> {
    p.element().slots().iter().map(|m| m.trace().re).collect()
}

fn real_parts(f: &CentralFunction) -> Vec<Rational> {
    f.values().iter().map(|v| v.re.clone()).collect()
}

fn spec_123(rng: &mut ChaCha8Rng, atoms: usize) -> Arc<AlgebraSpec> {
    random_spec(rng, "acc", &[1, 2, 3], atoms).unwrap()
}

// ---------------------------------------------------------------------------

fn c1_factorization() -> Outcome {
    let start = Instant::now();
    let dist = EntryDist::integers(2);
    let mut failures = 0;
    let mut max_dim = 0;
    for i in 0..200 {
        let mut rng = stream_rng(SEED, i);
        let spec = spec_123(&mut rng, 6);
        max_dim = max_dim.max(spec.dim());
        let len = rng.random_range(1..=5);
        let word = random_word(&mut rng, &spec, len, &dist);
        let t = evaluate_word(spec.clone(), &word).unwrap();
        let d = decompose(&t).unwrap();
        let net = net_map(&spec, &word);
        if d.phi.map() != net.as_slice() {
            failures += 1;
            continue;
        }
        let a_inv = AlgebraElement::from_fn(spec.clone(), |s| d.a.slot(s).inverse().unwrap());
        let ok = (0..spec.dim()).all(|b| {
            let (s, i, j) = spec.basis_coords(b);
            let u = net[s];
            let n = spec.slot(s).degree;
            let mut expected = AlgebraElement::zero(spec.clone());
            *expected.slot_mut(u) = &(d.a.slot(u) * &QMatrix::unit(n, i, j)) * a_inv.slot(u);
            &expected == t.image(b)
        });
        if !ok {
            failures += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: failures == 0 && secs < 60.0,
        detail: format!("200 words, max dim {max_dim}, {failures} failures, {secs:.2}s (< 60s)"),
    }
}

fn c2_uniqueness() -> Outcome {
    let dist = EntryDist::fractions(3, 2);
    let mut failures = 0;
    for i in 0..100 {
        let mut rng = stream_rng(SEED + 2, i);
        let spec = spec_123(&mut rng, 4);
        let a = random_invertible(&mut rng, &spec, &dist);
        let pi = random_central_automorphism(&mut rng, &spec);
        let t = compose(&make_inner(&a).unwrap(), &make_central(&pi)).unwrap();
        let d = decompose(&t).unwrap();
        if d.phi != pi || d.a != leading_normalized(&a) {
            failures += 1;
        }
    }
    outcome(failures, format!("100 (a, π) pairs, {failures} failures"))
}

fn c3_skolem_noether() -> Outcome {
    let dist = EntryDist::integers(3);
    let mut failures = 0;
    for n in 1..=5usize {
        for i in 0..100 {
            let mut rng = stream_rng(SEED + 3, (n as u64) * 1000 + i);
            let (g, _) = random_invertible_matrix(&mut rng, n, &dist);
            let g_inv = g.inverse().unwrap();
            let f = |i, j| &(&g * &QMatrix::unit(n, i, j)) * &g_inv;
            let a = skolem_noether_slot(&MatrixUnitImages::conjugated(&g).unwrap()).unwrap();
            let intertwines = (0..n).all(|i| {
                (0..n).all(|j| &a * &QMatrix::unit(n, i, j) == &f(i, j) * &a)
            });
            if !intertwines || a.determinant().is_zero() {
                failures += 1;
            }
        }
    }
    outcome(failures, format!("500 slot automorphisms (n = 1..5), {failures} failures"))
}

fn c4_classifier() -> Outcome {
    let dist = EntryDist::integers(2);
    let mut failures = 0;
    for i in 0..100 {
        let mut rng = stream_rng(SEED + 4, i);
        let spec = spec_123(&mut rng, 3);
        let len = rng.random_range(1..=4);
        let word = random_band_preserving_word(&mut rng, &spec, len, &dist);
        assert!(net_map(&spec, &word).iter().enumerate().all(|(s, &t)| s == t));
        let t = evaluate_word(spec.clone(), &word).unwrap();
        match classify_band_preserving(&t).unwrap() {
            Classification::Inner(w) => {
                let ok = (&w.a * &w.a_inv).is_one()
                    && (0..spec.dim()).all(|b| {
                        let x = AlgebraElement::basis(spec.clone(), b);
                        &(&w.a * &x) * &w.a_inv == *t.image(b)
                    });
                if !ok {
                    failures += 1;
                }
            }
            Classification::NotBandPreserving(_) => failures += 1,
        }
    }
    let mut nontrivial = 0;
    let mut i = 0;
    while nontrivial < 100 {
        let mut rng = stream_rng(SEED + 40, i);
        i += 1;
        let spec = spec_123(&mut rng, 3);
        let len = rng.random_range(2..=5);
        let word = random_word(&mut rng, &spec, len, &dist);
        let net = net_map(&spec, &word);
        if net.iter().enumerate().all(|(s, &t)| s == t) {
            continue;
        }
        nontrivial += 1;
        let t = evaluate_word(spec.clone(), &word).unwrap();
        match classify_band_preserving(&t).unwrap() {
            Classification::NotBandPreserving(phi) if phi.map() == net.as_slice() => {}
            _ => failures += 1,
        }
    }
    outcome(failures, format!("100 band-preserving + 100 nontrivial words, {failures} misclassified"))
}

fn c5_equality() -> Outcome {
    let mut hard = 0;
    let mut boundary = 0;
    for (k, eps) in [rational(1, 4), rational(1, 2), rational(3, 4)].into_iter().enumerate() {
        let mut rng = stream_rng(SEED + 5, k as u64);
        let spec = spec_123(&mut rng, 4);
        let nb = random_neighborhood(&mut rng, &spec, eps);
        let report = equality_test(&spec, &nb, 10_000, SEED + 50 + k as u64).unwrap();
        hard += report.hard_failures.len();
        boundary += report.boundary_count;
    }
    let spec = AlgebraSpec::single(2);
    let x = AlgebraElement::new(
        spec.clone(),
        vec![QMatrix::diag(vec![Q::from_int(5), Q::from_fracs(1, 4, 0, 1)])],
    )
    .unwrap();
    let nb = NeighborhoodSpec::whole(spec.center_space(), rational(3, 2), rational(0, 1));
    let witness_ok = v_membership(&x, &nb).unwrap().status == Status::In
        && o_membership(&x, &nb).unwrap().status == Status::Out;
    Outcome {
        pass: hard == 0 && witness_ok,
        detail: format!(
            "3 x 10^4 samples, {hard} hard disagreements, {boundary} in band; diag(5, 1/4) V-In/O-Out: {witness_ok}"
        ),
    }
}

fn c6_inclusion() -> Outcome {
    let eps_choices = [(1, 4), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1)];
    let mut hard = 0;
    let mut boundary = 0;
    for k in 0..10u64 {
        let mut rng = stream_rng(SEED + 6, k);
        let spec = spec_123(&mut rng, 4);
        let (p, q) = eps_choices[rng.random_range(0..eps_choices.len())];
        let nb = random_neighborhood(&mut rng, &spec, rational(p, q));
        let report = inclusion_test(&spec, &nb, 1_000, SEED + 60 + k).unwrap();
        hard += report.hard_failures.len();
        boundary += report.boundary_count;
    }
    outcome(hard, format!("10 neighborhoods x 1000 samples, {hard} counterexamples, {boundary} in band"))
}

fn c7_norm_axioms() -> Outcome {
    let tol = 1e-9;
    let dist = EntryDist::fractions(3, 2).with_zero_slots(0.25);
    let mut failures = 0;
    for i in 0..500 {
        let mut rng = stream_rng(SEED + 7, i);
        let spec = spec_123(&mut rng, 3);
        let x = random_element(&mut rng, &spec, &dist);
        let y = random_element(&mut rng, &spec, &dist);
        let f = random_central_function(&mut rng, &spec, &dist);
        let nx = vector_norm(&x);
        let ny = vector_norm(&y);
        let nsum = vector_norm(&(&x + &y)).values;
        let nprod = vector_norm(&(&x * &y)).values;
        let nfx = vector_norm(&x.central_mul(&f).unwrap()).values;
        let nxx = vector_norm(&(&x * &x.adjoint())).values;
        let certified = nx.certify(&x) && ny.certify(&y);
        let ok = (0..spec.num_slots()).all(|s| {
            let (a, b) = (nx.values[s], ny.values[s]);
            let absf = rational_to_f64(&f.value(s).norm_sqr()).sqrt();
            a >= 0.0
                && ((a == 0.0) == x.slot(s).is_zero())
                && (nfx[s] - absf * a).abs() <= tol
                && nsum[s] <= a + b + tol
                && nprod[s] <= a * b + tol
                && (nxx[s] - a * a).abs() <= tol * (1.0 + a * a)
        });
        if !ok || !certified {
            failures += 1;
        }
    }
    outcome(failures, format!("500 elements, 5 properties + exact norm certificates, {failures} failures"))
}

/// `(1 − K)(1 + K)⁻¹` for skew-Hermitian `K`: an exact unitary.
fn cayley_unitary(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    let b = random_matrix(rng, n, &EntryDist::fractions(2, 3));
    let k = &b - &b.adjoint();
    let id = QMatrix::identity(n);
    &(&id - &k) * &(&id + &k).inverse().expect("1 + K is invertible")
}

fn c8_dimension_axioms() -> Outcome {
    let mut failures = [0usize; 5];
    let mut d_ge_c = true;
    let mut check_ge = |p: &ProjectionElement| {
        let d = real_parts(&dimension(p));
        let c = real_parts(&central_cover(p.element()).as_function());
        d_ge_c &= d.iter().zip(&c).all(|(d, c)| d >= c);
    };
    for i in 0..200 {
        let mut rng = stream_rng(SEED + 8, i);
        let spec = spec_123(&mut rng, 3);

        // (ii) additivity on orthogonal pairs
        let (p, q) = random_orthogonal_pair(&mut rng, &spec);
        let sum = ProjectionElement::new(p.element() + q.element()).unwrap();
        let lhs = trace_rank(&sum);
        let rhs: Vec<Rational> = trace_rank(&p).iter().zip(trace_rank(&q)).map(|(a, b)| a + b).collect();
        if real_parts(&dimension(&sum)) != lhs || lhs != rhs || real_parts(&dimension(&p)) != trace_rank(&p) {
            failures[0] += 1;
        }
        check_ge(&p);
        check_ge(&q);
        check_ge(&sum);

        // (iii) d(uu*) = d(u*u) for an exact partial isometry u = U·P
        let u = AlgebraElement::from_fn(spec.clone(), |s| {
            let n = spec.slot(s).degree;
            let unitary = cayley_unitary(&mut rng, n);
            let mut perm = QMatrix::zeros(n, n);
            let mut cols: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(cols.as_mut_slice(), &mut rng);
            for (r, &c) in cols.iter().enumerate() {
                if rng.random_bool(0.6) {
                    perm[(r, c)] = Q::one();
                }
            }
            &unitary * &perm
        });
        let uu = ProjectionElement::new(&u * &u.adjoint()).unwrap();
        let uu_star = ProjectionElement::new(&u.adjoint() * &u).unwrap();
        let equiv = equivalent(&uu, &uu_star).unwrap();
        if dimension(&uu) != dimension(&uu_star) || !equiv.is_some_and(|w| w.verify(&uu, &uu_star)) {
            failures[1] += 1;
        }
        check_ge(&uu);

        // (iv) d(ze) = z d(e)
        let e = random_projection(&mut rng, &spec);
        let z = random_central_projection(&mut rng, &spec);
        let zel = AlgebraElement::from_central_projection(spec.clone(), &z).unwrap();
        let ze = ProjectionElement::new(&zel * e.element()).unwrap();
        let expected: Vec<Rational> = trace_rank(&e)
            .iter()
            .enumerate()
            .map(|(s, r)| if z.contains(s) { r.clone() } else { Rational::zero() })
            .collect();
        if real_parts(&dimension(&ze)) != expected {
            failures[2] += 1;
        }
        check_ge(&e);

        // (v) increasing chains: d(e) = sup d(e_k)
        let chain = random_chain(&mut rng, &spec, 4);
        let ranks: Vec<Vec<Rational>> = chain.iter().map(trace_rank).collect();
        let top = real_parts(&dimension(chain.last().unwrap()));
        let sup: Vec<Rational> = (0..spec.num_slots())
            .map(|s| ranks.iter().map(|r| r[s].clone()).max().unwrap())
            .collect();
        let monotone = chain.windows(2).all(|w| {
            let (a, b) = (real_parts(&dimension(&w[0])), real_parts(&dimension(&w[1])));
            a.iter().zip(&b).all(|(x, y)| x <= y)
        });
        if top != sup || !monotone {
            failures[3] += 1;
        }
        chain.iter().for_each(&mut check_ge);
    }
    // normalization: d(p) = c(p) = 1 for abelian projections with full support
    for i in 0..100 {
        let mut rng = stream_rng(SEED + 80, i);
        let spec = spec_123(&mut rng, 3);
        let p = random_full_abelian(&mut rng, &spec);
        let c = central_cover(p.element());
        if !c.is_full() || real_parts(&dimension(&p)) != real_parts(&c.as_function()) {
            failures[4] += 1;
        }
        check_ge(&p);
    }
    let total: usize = failures.iter().sum();
    Outcome {
        pass: total == 0 && d_ge_c,
        detail: format!(
            "failures (ii) {} (iii) {} (iv) {} (v) {} d(p)=c(p) {}; d(e) >= c(e): {d_ge_c}",
            failures[0], failures[1], failures[2], failures[3], failures[4]
        ),
    }
}

fn c9_abelian_witness() -> Outcome {
    let dist = EntryDist::fractions(3, 2).with_zero_slots(0.4);
    let mut failures = 0;
    for i in 0..200 {
        let mut rng = stream_rng(SEED + 9, i);
        let spec = spec_123(&mut rng, 3);
        let x = random_nonzero_element(&mut rng, &spec, &dist);
        let ok = abelian_annihilator_test(&x).is_some_and(|p| {
            let p = p.element();
            let rank_le_one = p.slots().iter().all(|m| m.trace().re <= Rational::one());
            rank_le_one && !(&(p * &(&x.adjoint() * &x)) * p).is_zero()
        });
        if !ok {
            failures += 1;
        }
    }
    let zero = AlgebraElement::zero(AlgebraSpec::homogeneous(3, 2));
    let zero_ok = abelian_annihilator_test(&zero).is_none();
    Outcome {
        pass: failures == 0 && zero_ok,
        detail: format!("200 nonzero elements, {failures} without witness; x = 0 -> None: {zero_ok}"),
    }
}

fn c10_full_cover() -> Outcome {
    let dist = EntryDist::integers(2);
    let mut failures = 0;
    for i in 0..200 {
        let mut rng = stream_rng(SEED + 10, i);
        let spec = spec_123(&mut rng, 4);
        let word = random_word(&mut rng, &spec, 3, &dist);
        let t = evaluate_word(spec.clone(), &word).unwrap();
        let x = loop {
            let x = random_element(&mut rng, &spec, &EntryDist::fractions(2, 3));
            if x.slots().iter().all(|m| !m.is_zero()) {
                break x;
            }
        };
        let tx = t.apply(&x).unwrap();
        if tx.slots().iter().any(QMatrix::is_zero) || !central_cover(&tx).is_full() {
            failures += 1;
        }
    }
    outcome(failures, format!("200 (T, x) with c(x) = 1, {failures} failures"))
}

fn c11_norm_lower_bound() -> Outcome {
    let dist = EntryDist::fractions(3, 2);
    let mut failures = 0;
    for i in 0..100 {
        let mut rng = stream_rng(SEED + 11, i);
        let n = rng.random_range(1..=4);
        let spec = random_spec(&mut rng, "hom", &[n], 5).unwrap();
        let a: Vec<CentralFunction> = (0..n).map(|_| random_central_function(&mut rng, &spec, &dist)).collect();
        let x = AlgebraElement::from_fn(spec.clone(), |s| {
            QMatrix::diag(a.iter().map(|f| f.value(s).clone()).collect())
        });
        let word = random_word(&mut rng, &spec, 3, &EntryDist::integers(2));
        let t = evaluate_word(spec.clone(), &word).unwrap();
        let ntx = vector_norm(&t.apply(&x).unwrap()).values;
        let ok = a.iter().all(|ak| {
            let phi_ak = t
                .apply(&AlgebraElement::from_central(spec.clone(), ak).unwrap())
                .unwrap()
                .as_central()
                .expect("automorphisms preserve the center");
            (0..spec.num_slots()).all(|s| {
                ntx[s] >= rational_to_f64(&phi_ak.value(s).norm_sqr()).sqrt() - 1e-9
            })
        });
        if !ok {
            failures += 1;
        }
    }
    outcome(failures, format!("100 homogeneous instances, {failures} failures"))
}

// --- brute-force V oracle on a single 2×2 atom ------------------------------

fn to_c2(m: &QMatrix) -> Matrix2<Complex64> {
    let c = |e: &Q| Complex64::new(rational_to_f64(&e.re), rational_to_f64(&e.im));
    Matrix2::new(c(&m[(0, 0)]), c(&m[(0, 1)]), c(&m[(1, 0)]), c(&m[(1, 1)]))
}

/// Eigenvalues of `M*M` in closed form, larger first.
fn gram_eigen(m: &Matrix2<Complex64>) -> (f64, f64, Matrix2<Complex64>) {
    let h = m.adjoint() * m;
    let (a, d, b) = (h[(0, 0)].re, h[(1, 1)].re, h[(0, 1)]);
    let mid = (a + d) / 2.0;
    let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
    (mid + rad, (mid - rad).max(0.0), h)
}

fn op_norm(m: &Matrix2<Complex64>) -> f64 {
    gram_eigen(m).0.sqrt()
}

/// Unit vector spanning the bottom eigenspace of `M*M`.
fn bottom_singular_vector(m: &Matrix2<Complex64>) -> (Complex64, Complex64) {
    let (_, lo, h) = gram_eigen(m);
    let (a, d, b) = (h[(0, 0)].re, h[(1, 1)].re, h[(0, 1)]);
    let (u, v) = if b.norm() > 1e-14 {
        (b, Complex64::new(lo - a, 0.0))
    } else if a <= d {
        (Complex64::one(), Complex64::zero())
    } else {
        (Complex64::zero(), Complex64::one())
    };
    let len = (u.norm_sqr() + v.norm_sqr()).sqrt();
    (u / len, v / len)
}

/// `W(A, ε, δ)` membership of the constant `c` on one atom, by enumerating `B ⊆ A`.
fn w_brute(c: f64, weight: f64, in_a: bool, eps: f64, delta: f64) -> bool {
    let subsets: &[bool] = if in_a { &[false, true] } else { &[false] };
    subsets.iter().any(|&b| {
        let outside = if in_a && !b { weight } else { 0.0 };
        outside <= delta && (!b || c.abs() <= eps)
    })
}

/// Three-valued verdict from exhaustive search over `(p, z)`.
fn v_brute(x: &QMatrix, weight: f64, in_a: bool, eps: f64, delta: f64, eta: f64) -> Status {
    let m = to_c2(x);
    // feasible values of ‖xp‖_M
    let mut best = f64::INFINITY;
    // z = 0: p = 0 is allowed, z⊥ = 1 must lie in W
    if w_brute(1.0, weight, in_a, eps, delta) {
        best = 0.0;
    }
    // z = 1: z⊥ = 0 always lies in W, rank p⊥ ≤ ε
    best = best.min(op_norm(&m));
    if eps >= 1.0 {
        let mut rank_one = |u: Complex64, v: Complex64| {
            let xi = nalgebra::Vector2::new(u, v);
            let p = xi * xi.adjoint();
            best = best.min(op_norm(&(m * p)));
        };
        let steps = 64;
        for ti in 0..=steps {
            let theta = (PI / 2.0) * ti as f64 / steps as f64;
            for pi in 0..steps {
                let ph = 2.0 * PI * pi as f64 / steps as f64;
                rank_one(Complex64::new(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), ph));
            }
        }
        let (u, v) = bottom_singular_vector(&m);
        rank_one(u, v);
    }
    if eps >= 2.0 {
        best = 0.0;
    }
    if best <= eps - eta {
        Status::In
    } else if best > eps + eta {
        Status::Out
    } else {
        Status::Boundary
    }
}

fn c12_v_oracle() -> Outcome {
    let eta = 1e-9;
    let eps_choices = [(1, 4), (1, 2), (3, 4), (1, 1), (5, 4), (3, 2), (2, 1), (5, 2)];
    let delta_choices = [(0, 1), (1, 2), (1, 1), (2, 1)];
    let mut disagreements = 0;
    let mut boundary = 0;
    let mut statuses = [0usize; 2];
    for i in 0..50 {
        let mut rng = stream_rng(SEED + 12, i);
        let weight = rational(rng.random_range(1..=3), rng.random_range(1..=2));
        let space = MeasureSpace::new(vec![("w".into(), weight.clone())]).unwrap();
        let spec = Arc::new(AlgebraSpec::new("oracle", vec![Block::new("b", 2, space)]).unwrap());
        let scale: i64 = rng.random_range(1..=6);
        let x = random_element(&mut rng, &spec, &EntryDist::fractions(3, 2))
            .scale(&Q::from_fracs(1, scale, 0, 1));
        let (ep, eq) = eps_choices[rng.random_range(0..eps_choices.len())];
        let (dp, dq) = delta_choices[rng.random_range(0..delta_choices.len())];
        let in_a = rng.random_bool(0.8);
        let set = if in_a { spec.center_space().atoms().to_vec() } else { vec![] };
        let nb = NeighborhoodSpec::new(set, rational(ep, eq), rational(dp, dq));

        let got = v_membership(&x, &nb).unwrap().status;
        let want = v_brute(
            x.slot(0),
            rational_to_f64(&weight),
            in_a,
            ep as f64 / eq as f64,
            dp as f64 / dq as f64,
            eta,
        );
        match (got, want) {
            (Status::Boundary, _) | (_, Status::Boundary) => boundary += 1,
            (g, w) if g != w => disagreements += 1,
            (g, _) => statuses[usize::from(g == Status::In)] += 1,
        }
    }
    outcome(
        disagreements,
        format!(
            "50 instances ({} In, {} Out agreed), {disagreements} disagreements, {boundary} in band",
            statuses[1], statuses[0]
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        ("factorization round trip", c1_factorization),
        ("uniqueness of (a, phi)", c2_uniqueness),
        ("Skolem-Noether synthesis", c3_skolem_noether),
        ("band-preserving classifier", c4_classifier),
        ("topology equality for eps < 1", c5_equality),
        ("topology inclusion O in V", c6_inclusion),
        ("norm axioms", c7_norm_axioms),
        ("dimension axioms", c8_dimension_axioms),
        ("abelian witness", c9_abelian_witness),
        ("central cover preserved", c10_full_cover),
        ("norm lower bound", c11_norm_lower_bound),
        ("V reduction vs brute force", c12_v_oracle),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!(
                "panicked: {}",
                e.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default()
            ),
        });
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {} [{:.2}s]",
            k + 1,
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
