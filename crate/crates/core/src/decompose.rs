//! Factorization of an automorphism as `T = T_a ∘ T_φ`.
//!
//! `φ` is read off from the action of `T` on the minimal central projections.
//! The remainder `S = T ∘ T_φ⁻¹` fixes the center, so at every slot it sends
//! the matrix units `e_ij` to a system of matrix units `f_ij` of `M_n(ℂ)`,
//! and the implementing element is synthesized explicitly:
//!
//! Pick the first `(p, q)` in row-major order with `f_11 e_pq f_11 ≠ 0` and
//! put `a = Σ_k f_k1 e_pk`. Then
//!
//! * `a e_ij = f_i1 e_pj = f_ij a`, by the matrix-unit relations on both sides;
//! * with `b = Σ_k e_kq f_1k`, `ab = Σ_k f_k1 (f_11 e_pq f_11) f_1k = λ Σ_k f_kk = λ·1`,
//!   because `f_11` has rank one and so `f_11 e_pq f_11 = λ f_11` with `λ ≠ 0`.
//!
//! Hence `a` is invertible and `S(x) = a x a⁻¹` at that slot. The element `a`
//! is only determined up to a nonzero central factor; the canonical
//! representative divides each slot by its first nonzero entry (row-major).
//! Other normalizations (e.g. determinant one) would give different but
//! equally valid outputs.

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::automorphism::{Automorphism, CentralAutomorphism, InnerWitness};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;

/// Images `f_ij` of the matrix units at one slot, row-major in `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixUnitImages {
    n: usize,
    units: Vec<QMatrix>,
}

impl MatrixUnitImages {
    pub fn new(n: usize, units: Vec<QMatrix>) -> Result<Self> {
        if units.len() != n * n || units.iter().any(|u| u.rows() != n || u.cols() != n) {
            return Err(Error::InvalidSpec(format!(
                "expected {} matrices of size {n}x{n}",
                n * n
            )));
        }
        Ok(Self { n, units })
    }

    /// `f_ij = g e_ij g⁻¹`; `None` when `g` is singular.
    pub fn conjugated(g: &QMatrix) -> Option<Self> {
        let n = g.rows();
        let g_inv = g.inverse()?;
        let units = (0..n * n)
            .map(|k| &(g * &QMatrix::unit(n, k / n, k % n)) * &g_inv)
            .collect();
        Some(Self { n, units })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `f_ij`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &QMatrix {
        &self.units[i * self.n + j]
    }

    /// `f_ij f_kl = δ_jk f_il` and `Σ f_ii = 1`, exactly.
    pub fn is_system(&self) -> bool {
        let n = self.n;
        let mut sum = QMatrix::zeros(n, n);
        for i in 0..n {
            sum = &sum + self.get(i, i);
        }
        if !sum.is_identity() {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    (0..n).all(|l| {
                        let prod = self.get(i, j) * self.get(k, l);
                        if j == k {
                            &prod == self.get(i, l)
                        } else {
                            prod.is_zero()
                        }
                    })
                })
            })
        })
    }
}

/// Divides by the first nonzero entry in row-major order.
pub fn canonicalize_matrix(m: &QMatrix) -> Option<QMatrix> {
    let (_, lead) = m.first_nonzero()?;
    let inv = lead.inv()?;
    Some(m.scale(&inv))
}

/// Per-slot leading-entry normalization of an invertible element; `T_a` is
/// unchanged since only central factors are removed.
pub fn canonicalize(a: &AlgebraElement) -> Result<AlgebraElement> {
    let spec = a.spec();
    let slots = a
        .slots()
        .iter()
        .enumerate()
        .map(|(s, m)| {
            let not_inv = || Error::NotInvertible {
                slot: spec.slot(s).label.clone(),
            };
            if m.determinant().is_zero() {
                return Err(not_inv());
            }
            canonicalize_matrix(m).ok_or_else(not_inv)
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraElement::new(spec.clone(), slots)
}

/// An invertible `a` with `a e_ij = f_ij a` for all `i, j`, canonically normalized.
pub fn skolem_noether_slot(images: &MatrixUnitImages) -> Result<QMatrix> {
    let n = images.degree();
    let f11 = images.get(0, 0);
    let p = (0..n * n)
        .map(|k| (k / n, k % n))
        .find(|&(p, q)| !(&(f11 * &QMatrix::unit(n, p, q)) * f11).is_zero())
        .map(|(p, _)| p)
        .ok_or(Error::NoWitnessPair)?;
    let mut a = QMatrix::zeros(n, n);
    for k in 0..n {
        // f_k1 e_pk has column k equal to column p of f_k1
        let f = images.get(k, 0);
        for r in 0..n {
            a[(r, k)] = f[(r, p)].clone();
        }
    }
    canonicalize_matrix(&a).ok_or(Error::NoWitnessPair)
}

/// The slot permutation induced by `T` on the minimal central projections.
pub fn extract_phi(t: &Automorphism) -> Result<CentralAutomorphism> {
    let spec = t.spec();
    let mut map = Vec::with_capacity(spec.num_slots());
    for (s, tz) in t.central_images().iter().enumerate() {
        let support = tz.support();
        let target = match support.as_slice() {
            [t] if tz.slot(*t).is_identity() => *t,
            _ => {
                return Err(Error::NotCentralPermutation(format!(
                    "image of the central unit at {} is not a minimal central projection",
                    spec.slot(s).label
                )))
            }
        };
        let (from, to) = (spec.slot(s), spec.slot(target));
        if from.degree != to.degree {
            return Err(Error::DegreeMismatch {
                from: from.label.clone(),
                from_degree: from.degree,
                to: to.label.clone(),
                to_degree: to.degree,
            });
        }
        map.push(target);
    }
    CentralAutomorphism::new(spec.clone(), map).map_err(|e| match e {
        Error::InvalidCentralMap(m) => Error::NotCentralPermutation(m),
        other => other,
    })
}

/// `T = T_a ∘ T_φ` with `a` canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub phi: CentralAutomorphism,
    pub a: AlgebraElement,
    pub a_inv: AlgebraElement,
    pub certificate: bool,
}

impl Decomposition {
    pub fn witness(&self) -> InnerWitness {
        InnerWitness {
            a: self.a.clone(),
            a_inv: self.a_inv.clone(),
        }
    }
}

/// Checks `T(b) = a T_φ(b) a⁻¹` on every basis vector; returns the first failure.
fn check_reconstruction(
    t: &Automorphism,
    phi: &CentralAutomorphism,
    a: &AlgebraElement,
    a_inv: &AlgebraElement,
) -> Option<usize> {
    let spec = t.spec();
    (0..spec.dim()).into_par_iter().find_first(|&b| {
        let (s, i, j) = spec.basis_coords(b);
        let target = phi.image(s);
        let n = spec.slot(s).degree;
        let img = t.image(b);
        let expected = &(a.slot(target) * &QMatrix::unit(n, i, j)) * a_inv.slot(target);
        !(0..spec.num_slots()).all(|u| {
            if u == target {
                img.slot(u) == &expected
            } else {
                img.slot(u).is_zero()
            }
        })
    })
}

fn slot_images(t: &Automorphism, spec: &Arc<AlgebraSpec>, source: usize, target: usize) -> Result<MatrixUnitImages> {
    let n = spec.slot(source).degree;
    let mut units = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let img = t.image(spec.basis_index(source, i, j));
            if img.support().iter().any(|&u| u != target) {
                return Err(Error::NotCentralPermutation(format!(
                    "T∘T_φ⁻¹ moves a matrix unit out of {}",
                    spec.slot(target).label
                )));
            }
            units.push(img.slot(target).clone());
        }
    }
    MatrixUnitImages::new(n, units)
}

pub fn decompose(t: &Automorphism) -> Result<Decomposition> {
    let spec = t.spec().clone();
    let phi = extract_phi(t)?;
    let phi_inv = phi.inverse();

    // S = T ∘ T_φ⁻¹ sends e_ij ⊗ δ_u to T(e_ij ⊗ δ_{φ⁻¹(u)}), which must stay at u.
    let a_slots = (0..spec.num_slots())
        .into_par_iter()
        .map(|u| {
            let f = slot_images(t, &spec, phi_inv.image(u), u)?;
            skolem_noether_slot(&f)
        })
        .collect::<Result<Vec<_>>>()?;
    let a = AlgebraElement::new(spec.clone(), a_slots)?;
    let a_inv = a.inverse()?;

    if let Some(b) = check_reconstruction(t, &phi, &a, &a_inv) {
        return Err(Error::ReconstructionFailure(spec.basis_label(b)));
    }
    Ok(Decomposition {
        phi,
        a,
        a_inv,
        certificate: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Inner(InnerWitness),
    NotBandPreserving(CentralAutomorphism),
}

/// Band-preserving automorphisms are inner; otherwise the nontrivial center
/// permutation is returned as the obstruction.
pub fn classify_band_preserving(t: &Automorphism) -> Result<Classification> {
    let d = decompose(t)?;
    if t.is_band_preserving() {
        if !d.phi.is_identity() {
            return Err(Error::NotCentralPermutation(
                "band-preserving automorphism moved a central projection".into(),
            ));
        }
        let w = d.witness();
        let spec = t.spec();
        let ok = (0..spec.dim()).into_par_iter().all(|b| {
            w.conjugate(&AlgebraElement::basis(spec.clone(), b)) == *t.image(b)
        });
        if !ok {
            return Err(Error::ReconstructionFailure("inner witness".into()));
        }
        Ok(Classification::Inner(w))
    } else {
        Ok(Classification::NotBandPreserving(d.phi))
    }
}

/// Is `a` a legitimate canonical representative: leading entry one at every slot.
pub fn is_canonical(a: &AlgebraElement) -> bool {
    a.slots()
        .iter()
        .all(|m| m.first_nonzero().is_some_and(|(_, e)| e.is_one()))
}
