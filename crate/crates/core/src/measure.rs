//! Finite atomic measure spaces, central functions on them, and the
//! neighborhoods `W(A, ε, δ)` of the topology of convergence locally in measure.
//!
//! On a finite atomic space every measurable function is bounded, so the
//! function algebra realized by [`CentralFunction`] is simultaneously `L⁰` and
//! `L^∞`. There are no null sets, hence no equivalence-class quotients.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, GaussianRational, Rational};

#[derive(Debug, Clone)]
pub struct MeasureSpace {
    atoms: Vec<String>,
    weights: Vec<Rational>,
    index: HashMap<String, usize>,
}

impl PartialEq for MeasureSpace {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms && self.weights == other.weights
    }
}

impl Eq for MeasureSpace {}

impl MeasureSpace {
    /// Atom order is significant: it fixes every canonical scan downstream.
    pub fn new(atoms: Vec<(String, Rational)>) -> Result<Self> {
        let mut index = HashMap::with_capacity(atoms.len());
        let mut ids = Vec::with_capacity(atoms.len());
        let mut weights = Vec::with_capacity(atoms.len());
        for (i, (id, w)) in atoms.into_iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::InvalidSpace(format!("atom {id:?} has weight {w} <= 0")));
            }
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate atom {id:?}")));
            }
            ids.push(id);
            weights.push(w);
        }
        Ok(Self {
            atoms: ids,
            weights,
            index,
        })
    }

    /// `n` atoms `w0, w1, …` of unit weight.
    pub fn uniform(n: usize) -> Self {
        Self::new((0..n).map(|i| (format!("w{i}"), Rational::one())).collect())
            .expect("generated atoms are unique")
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, atom: usize) -> &Rational {
        &self.weights[atom]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// `μ(S)` for a subset given as a mask.
    pub fn measure(&self, mask: &[bool]) -> Rational {
        self.weights
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .fold(Rational::zero(), |acc, (w, _)| acc + w)
    }

    pub fn total_measure(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn mask_of(&self, ids: &[String]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.len()];
        for id in ids {
            let i = self
                .index_of(id)
                .ok_or_else(|| Error::InvalidNeighborhood(format!("unknown atom {id:?}")))?;
            mask[i] = true;
        }
        Ok(mask)
    }

    pub fn ids_of(&self, mask: &[bool]) -> Vec<String> {
        self.atoms
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(a, _)| a.clone())
            .collect()
    }
}

/// A function from atoms to Gaussian rationals; the center of the finite model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralFunction {
    space: Arc<MeasureSpace>,
    values: Vec<GaussianRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfOp {
    Add,
    Sub,
    Mul,
}

impl CentralFunction {
    pub fn new(space: Arc<MeasureSpace>, values: Vec<GaussianRational>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::InvalidSpace(format!(
                "central function has {} values for {} atoms",
                values.len(),
                space.len()
            )));
        }
        Ok(Self { space, values })
    }

    pub fn constant(space: Arc<MeasureSpace>, c: GaussianRational) -> Self {
        let values = vec![c; space.len()];
        Self { space, values }
    }

    pub fn zero(space: Arc<MeasureSpace>) -> Self {
        Self::constant(space, GaussianRational::zero())
    }

    pub fn one(space: Arc<MeasureSpace>) -> Self {
        Self::constant(space, GaussianRational::one())
    }

    pub fn from_fn(space: Arc<MeasureSpace>, f: impl FnMut(usize) -> GaussianRational) -> Self {
        let values = (0..space.len()).map(f).collect();
        Self { space, values }
    }

    pub fn space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }

    pub fn values(&self) -> &[GaussianRational] {
        &self.values
    }

    pub fn value(&self, atom: usize) -> &GaussianRational {
        &self.values[atom]
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Pointwise ring operation.
    pub fn arith(&self, other: &Self, op: CfOp) -> Result<Self> {
        self.check_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| match op {
                CfOp::Add => a + b,
                CfOp::Sub => a - b,
                CfOp::Mul => a * b,
            })
            .collect();
        Ok(Self {
            space: self.space.clone(),
            values,
        })
    }

    pub fn conj(&self) -> Self {
        Self {
            space: self.space.clone(),
            values: self.values.iter().map(GaussianRational::conj).collect(),
        }
    }

    /// `|f|²` pointwise, exact.
    pub fn modulus_sqr(&self) -> Vec<Rational> {
        self.values.iter().map(GaussianRational::norm_sqr).collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    /// Permutes values along a slot map: `result(map[s]) = self(s)`.
    pub fn transport(&self, map: &[usize]) -> Self {
        let mut values = vec![GaussianRational::zero(); self.values.len()];
        for (s, &t) in map.iter().enumerate() {
            values[t] = self.values[s].clone();
        }
        Self {
            space: self.space.clone(),
            values,
        }
    }
}

impl Add for &CentralFunction {
    type Output = CentralFunction;
    fn add(self, rhs: &CentralFunction) -> CentralFunction {
        self.arith(rhs, CfOp::Add).expect("central functions on different spaces")
    }
}

impl Sub for &CentralFunction {
    type Output = CentralFunction;
    fn sub(self, rhs: &CentralFunction) -> CentralFunction {
        self.arith(rhs, CfOp::Sub).expect("central functions on different spaces")
    }
}

impl Mul for &CentralFunction {
    type Output = CentralFunction;
    fn mul(self, rhs: &CentralFunction) -> CentralFunction {
        self.arith(rhs, CfOp::Mul).expect("central functions on different spaces")
    }
}

/// The characteristic function `χ_B` of a set of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralProjection {
    space: Arc<MeasureSpace>,
    support: Vec<bool>,
}

impl CentralProjection {
    pub fn new(space: Arc<MeasureSpace>, support: Vec<bool>) -> Result<Self> {
        if support.len() != space.len() {
            return Err(Error::InvalidSpace("support mask has the wrong length".into()));
        }
        Ok(Self { space, support })
    }

    pub fn full(space: Arc<MeasureSpace>) -> Self {
        let support = vec![true; space.len()];
        Self { space, support }
    }

    pub fn empty(space: Arc<MeasureSpace>) -> Self {
        let support = vec![false; space.len()];
        Self { space, support }
    }

    pub fn atom(space: Arc<MeasureSpace>, atom: usize) -> Self {
        let mut support = vec![false; space.len()];
        support[atom] = true;
        Self { space, support }
    }

    pub fn space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }

    pub fn support(&self) -> &[bool] {
        &self.support
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.support[atom]
    }

    pub fn is_full(&self) -> bool {
        self.support.iter().all(|&b| b)
    }

    pub fn complement(&self) -> Self {
        Self {
            space: self.space.clone(),
            support: self.support.iter().map(|b| !b).collect(),
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a && b)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a || b)
    }

    pub fn le(&self, other: &Self) -> bool {
        self.support.iter().zip(&other.support).all(|(&a, &b)| !a || b)
    }

    fn zip(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        assert_eq!(self.support.len(), other.support.len());
        Self {
            space: self.space.clone(),
            support: self
                .support
                .iter()
                .zip(&other.support)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn measure(&self) -> Rational {
        self.space.measure(&self.support)
    }

    pub fn as_function(&self) -> CentralFunction {
        CentralFunction::from_fn(self.space.clone(), |i| {
            if self.support[i] {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }
}

/// Parameters `(A, ε, δ)` of a zero neighborhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodSpec {
    pub set: Vec<String>,
    pub eps: Rational,
    pub delta: Rational,
}

impl NeighborhoodSpec {
    pub fn new(set: Vec<String>, eps: Rational, delta: Rational) -> Self {
        Self { set, eps, delta }
    }

    /// `A = Ω`.
    pub fn whole(space: &MeasureSpace, eps: Rational, delta: Rational) -> Self {
        Self::new(space.atoms().to_vec(), eps, delta)
    }

    /// Validates the parameters and returns `A` as a mask over `space`.
    pub fn resolve(&self, space: &MeasureSpace) -> Result<Vec<bool>> {
        if !self.eps.is_positive() {
            return Err(Error::InvalidNeighborhood(format!("eps = {} must be > 0", self.eps)));
        }
        if self.delta.is_negative() {
            return Err(Error::InvalidNeighborhood(format!(
                "delta = {} must be >= 0",
                self.delta
            )));
        }
        space.mask_of(&self.set)
    }

    pub fn eps_f64(&self) -> f64 {
        rational_to_f64(&self.eps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    In,
    Out,
    Boundary,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// The admissible set `B ⊆ A`.
    Set(Vec<String>),
    /// A projection `p` (per slot, numeric: its range is spanned by singular
    /// vectors) and a central projection `z` given by its support.
    Projections {
        p: Vec<DMatrix<Complex64>>,
        z: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Slack of the measure budget, `δ − μ(A∖B)`, for the strict witness set.
    pub margin: f64,
}

impl MembershipVerdict {
    pub fn is_in(&self) -> bool {
        self.status == Status::In
    }
}

/// Decides `f ∈ W(A, ε, δ)` exactly.
///
/// The largest admissible set is `B = {ω ∈ A : |f(ω)|² ≤ ε²}`; any other set
/// satisfying the sup-norm bound is contained in it and therefore leaves a
/// larger remainder `A∖B`. Membership holds iff `μ(A∖B) ≤ δ`.
pub fn w_membership(f: &CentralFunction, nb: &NeighborhoodSpec) -> Result<MembershipVerdict> {
    let space = f.space();
    let a = nb.resolve(space)?;
    let b = maximal_admissible_set(f, &a, &nb.eps);
    let rest: Vec<bool> = a.iter().zip(&b).map(|(&x, &y)| x && !y).collect();
    let slack = &nb.delta - space.measure(&rest);
    let member = !slack.is_negative();
    Ok(MembershipVerdict {
        status: if member { Status::In } else { Status::Out },
        witness: member.then(|| Witness::Set(space.ids_of(&b))),
        margin: rational_to_f64(&slack),
    })
}

/// `{ω ∈ A : |f(ω)|² ≤ ε²}` as a mask.
pub fn maximal_admissible_set(f: &CentralFunction, a: &[bool], eps: &Rational) -> Vec<bool> {
    let eps2 = eps * eps;
    f.values()
        .iter()
        .zip(a)
        .map(|(v, &in_a)| in_a && v.norm_sqr() <= eps2)
        .collect()
}
