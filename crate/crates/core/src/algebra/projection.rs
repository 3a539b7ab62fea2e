//! Projections, the dimension function, abelian projections and
//! Murray–von Neumann equivalence in the finite model.
//!
//! At a slot carrying `M_n(ℂ)` a projection is a Hermitian idempotent matrix,
//! and a projection is abelian exactly when its corner `pM_np ≅ M_r(ℂ)` is
//! commutative, i.e. when `r = rank p ≤ 1`. The dimension function is the
//! slot rank; it takes the value 1 on every abelian projection with full
//! central cover, and it is integer-valued and finite everywhere (so the
//! "finite iff finite projection" axiom holds trivially).
//!
//! # Finite witness family for abelian annihilation
//!
//! To show that `x ≠ 0` is detected by some abelian projection, it suffices to
//! look at `y = x*x ≥ 0` and the rank-one projections `p_ξ = ξξ*/ξ*ξ` for
//! `ξ ∈ {e_i} ∪ {e_i + e_j} ∪ {e_i + i·e_j}` (`i < j`), since
//! `p_ξ y p_ξ = (ξ*yξ / (ξ*ξ)²) ξξ*` and the quadratic forms recover all
//! entries of a Hermitian `y`:
//!
//! ```text
//! y_ii          = e_i* y e_i
//! 2 Re y_ij     = (e_i + e_j)* y (e_i + e_j)     - y_ii - y_jj
//! -2 Im y_ij    = (e_i + i e_j)* y (e_i + i e_j) - y_ii - y_jj
//! ```
//!
//! So `p_ξ y p_ξ = 0` for the whole family forces `y = 0`, hence `x = 0`.
//! Every `p_ξ` has rational entries because `ξ*ξ ∈ {1, 2}`.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::element::{same_spec, AlgebraElement};
use super::AlgebraSpec;
use crate::error::{Error, Result};
use crate::matrix::{gram_schmidt, inner, QMatrix};
use crate::measure::CentralFunction;
use crate::scalar::{rational_sqrt_exact, GaussianRational, Rational};

type Q = GaussianRational;

/// An element with `p² = p = p*`, checked exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionElement(AlgebraElement);

impl ProjectionElement {
    pub fn new(p: AlgebraElement) -> Result<Self> {
        for (s, m) in p.slots().iter().enumerate() {
            if !m.is_hermitian() || !m.is_idempotent() {
                return Err(Error::NotAProjection {
                    slot: p.spec().slot(s).label.clone(),
                });
            }
        }
        Ok(Self(p))
    }

    pub fn element(&self) -> &AlgebraElement {
        &self.0
    }

    pub fn into_element(self) -> AlgebraElement {
        self.0
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        self.0.spec()
    }

    /// `1 − p`.
    pub fn complement(&self) -> Self {
        Self(&AlgebraElement::one(self.spec().clone()) - &self.0)
    }
}

/// `d(p)` = slot rank, exact.
pub fn dimension(p: &ProjectionElement) -> CentralFunction {
    let spec = p.spec();
    CentralFunction::from_fn(spec.center_space().clone(), |s| {
        Q::from_int(p.element().slot(s).rank() as i64)
    })
}

/// Rank at most one in every slot.
pub fn is_abelian(p: &ProjectionElement) -> bool {
    p.element().slots().iter().all(|m| m.rank() <= 1)
}

/// One orthogonal pair of range vectors `(x_k, y_k)` with squared norms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramePair {
    pub source: Vec<Q>,
    pub source_norm: Rational,
    pub target: Vec<Q>,
    pub target_norm: Rational,
}

/// A partial isometry `u` with `uu* = p` and `u*u = q`, represented without
/// square roots.
///
/// Per slot, `x_k` is an orthogonal basis of `ran p` and `y_k` an orthogonal
/// basis of `ran q` (same count). The isometry is
/// `u = Σ_k x_k y_k* / √(α_k β_k)` with `α_k = |x_k|²`, `β_k = |y_k|²`. Its
/// defining identities reduce to exact statements about the frames:
/// `uu* = Σ x_k x_k* / α_k = p` and `u*u = Σ y_k y_k* / β_k = q`, which
/// [`PartialIsometry::verify`] checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialIsometry {
    spec: Arc<AlgebraSpec>,
    frames: Vec<Vec<FramePair>>,
}

impl PartialIsometry {
    pub fn frames(&self) -> &[Vec<FramePair>] {
        &self.frames
    }

    /// `v = Σ_k x_k y_k*`, the unnormalized isometry.
    pub fn scaled(&self) -> AlgebraElement {
        AlgebraElement::from_fn(self.spec.clone(), |s| {
            let n = self.spec.slot(s).degree;
            let mut m = QMatrix::zeros(n, n);
            for f in &self.frames[s] {
                m = &m + &QMatrix::outer(&f.source, &f.target);
            }
            m
        })
    }

    /// `u` itself, when every `α_k β_k` is a rational square.
    pub fn exact(&self) -> Option<AlgebraElement> {
        let mut slots = Vec::with_capacity(self.frames.len());
        for (s, frame) in self.frames.iter().enumerate() {
            let n = self.spec.slot(s).degree;
            let mut m = QMatrix::zeros(n, n);
            for f in frame {
                let r = rational_sqrt_exact(&(&f.source_norm * &f.target_norm))?;
                m = &m + &QMatrix::outer(&f.source, &f.target).scale_rational(&r.recip());
            }
            slots.push(m);
        }
        AlgebraElement::new(self.spec.clone(), slots).ok()
    }

    /// Exact certificate that `uu* = p` and `u*u = q`.
    pub fn verify(&self, p: &ProjectionElement, q: &ProjectionElement) -> bool {
        self.frames.iter().enumerate().all(|(s, frame)| {
            let n = self.spec.slot(s).degree;
            let orthogonal = |get: fn(&FramePair) -> &Vec<Q>| {
                frame.iter().enumerate().all(|(k, a)| {
                    frame[k + 1..].iter().all(|b| inner(get(a), get(b)).is_zero())
                })
            };
            let norms_ok = frame.iter().all(|f| {
                Q::from_rational(f.source_norm.clone()) == inner(&f.source, &f.source)
                    && Q::from_rational(f.target_norm.clone()) == inner(&f.target, &f.target)
            });
            let mut pp = QMatrix::zeros(n, n);
            let mut qq = QMatrix::zeros(n, n);
            for f in frame {
                pp = &pp + &QMatrix::outer(&f.source, &f.source).scale_rational(&f.source_norm.recip());
                qq = &qq + &QMatrix::outer(&f.target, &f.target).scale_rational(&f.target_norm.recip());
            }
            orthogonal(|f| &f.source)
                && orthogonal(|f| &f.target)
                && norms_ok
                && &pp == p.element().slot(s)
                && &qq == q.element().slot(s)
        })
    }
}

/// Orthogonal basis of the column space of a projection matrix.
fn range_frame(m: &QMatrix) -> Vec<(Vec<Q>, Rational)> {
    let cols: Vec<Vec<Q>> = (0..m.cols()).map(|j| m.column(j)).collect();
    gram_schmidt(&cols)
}

/// Murray–von Neumann equivalence: a partial isometry from `q` onto `p` when
/// the slot ranks agree everywhere, `None` otherwise.
pub fn equivalent(p: &ProjectionElement, q: &ProjectionElement) -> Result<Option<PartialIsometry>> {
    same_spec(p.spec(), q.spec())?;
    let spec = p.spec().clone();
    let mut frames = Vec::with_capacity(spec.num_slots());
    for s in 0..spec.num_slots() {
        let xs = range_frame(p.element().slot(s));
        let ys = range_frame(q.element().slot(s));
        if xs.len() != ys.len() {
            return Ok(None);
        }
        frames.push(
            xs.into_iter()
                .zip(ys)
                .map(|((source, source_norm), (target, target_norm))| FramePair {
                    source,
                    source_norm,
                    target,
                    target_norm,
                })
                .collect(),
        );
    }
    Ok(Some(PartialIsometry { spec, frames }))
}

/// The witness vectors scanned at a slot of degree `n`, in order.
pub fn witness_vectors(n: usize) -> Vec<Vec<Q>> {
    let unit = |i: usize| {
        let mut v = vec![Q::zero(); n];
        v[i] = Q::one();
        v
    };
    let mut out: Vec<Vec<Q>> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit(i);
            v[j] = Q::one();
            out.push(v);
            let mut v = unit(i);
            v[j] = Q::i();
            out.push(v);
        }
    }
    out
}

/// Finds an abelian projection `p` with `p(x*x)p ≠ 0`, or `None` iff `x = 0`.
pub fn abelian_annihilator_test(x: &AlgebraElement) -> Option<ProjectionElement> {
    let spec = x.spec();
    for (s, m) in x.slots().iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        let y = &m.adjoint() * m;
        let n = spec.slot(s).degree;
        for xi in witness_vectors(n) {
            let form = inner(&xi, &y.mul_vec(&xi));
            if form.is_zero() {
                continue;
            }
            let norm = inner(&xi, &xi).re;
            let mut p = AlgebraElement::zero(spec.clone());
            *p.slot_mut(s) = QMatrix::outer(&xi, &xi).scale_rational(&norm.recip());
            return Some(ProjectionElement::new(p).expect("rank-one projection"));
        }
    }
    None
}
