//! The center-valued operator norm `‖x‖(slot) = σ₁(x(slot))`.
//!
//! Singular values are algebraic rather than rational, so they are computed in
//! double precision. Each slot value carries a relative error bound which
//! [`NormValue::certify`] checks exactly: it converts the bounds to rationals
//! and proves `σ₁² < (σ + η)²` and `σ₁² ≥ (σ − η)²` by exact
//! positive-definiteness tests on `c·1 − x*x`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::element::AlgebraElement;
use crate::matrix::QMatrix;
use crate::scalar::{rational_from_f64, GaussianRational};

/// Relative error bound attached to every computed norm value.
pub const NORM_REL_BOUND: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct NormValue {
    pub values: Vec<f64>,
    pub bounds: Vec<f64>,
}

impl NormValue {
    pub fn value(&self, slot: usize) -> f64 {
        self.values[slot]
    }

    /// Exact check that each `values[s]` is within `bounds[s]` of `σ₁(x(s))`.
    pub fn certify(&self, x: &AlgebraElement) -> bool {
        x.slots().iter().enumerate().all(|(s, m)| {
            certify_slot(m, self.values[s], self.bounds[s])
        })
    }
}

fn certify_slot(m: &QMatrix, sigma: f64, eta: f64) -> bool {
    if m.is_zero() {
        return sigma == 0.0;
    }
    let gram = &m.adjoint() * m;
    let n = gram.rows();
    let shifted = |c: f64| -> Option<QMatrix> {
        let c = GaussianRational::from_rational(rational_from_f64(c)?);
        Some(&QMatrix::scalar(n, c) - &gram)
    };
    let hi = sigma + eta;
    let Some(upper) = shifted(hi * hi) else {
        return false;
    };
    if !upper.is_positive_definite() {
        return false;
    }
    let lo = sigma - eta;
    if lo <= 0.0 {
        return true;
    }
    match shifted(lo * lo) {
        Some(lower) => !lower.is_positive_definite(),
        None => false,
    }
}

/// Singular values of an exact matrix, in decreasing order.
pub fn singular_values(m: &QMatrix) -> Vec<f64> {
    if m.is_zero() {
        return vec![0.0; m.rows().min(m.cols())];
    }
    singular_values_f64(&m.to_complex())
}

pub fn singular_values_f64(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// `‖x‖` slot by slot.
pub fn vector_norm(x: &AlgebraElement) -> NormValue {
    let values: Vec<f64> = x
        .slots()
        .iter()
        .map(|m| singular_values(m).first().copied().unwrap_or(0.0))
        .collect();
    let bounds = values.iter().map(|v| v * NORM_REL_BOUND).collect();
    NormValue { values, bounds }
}

/// `‖x‖(slot) = 0` holds exactly when the slot matrix is zero.
pub fn is_norm_zero(x: &AlgebraElement, slot: usize) -> bool {
    x.slot(slot).entries().iter().all(Zero::is_zero)
}
