use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_traits::Zero;

use super::spec::AlgebraSpec;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::measure::{CentralFunction, CentralProjection};
use crate::scalar::GaussianRational;

/// An element of the algebra: one exact `n × n` matrix per slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    spec: Arc<AlgebraSpec>,
    slots: Vec<QMatrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElemOp {
    Add,
    Mul,
    /// Ignores the second operand.
    AdjointOfX,
}

pub(crate) fn same_spec(a: &Arc<AlgebraSpec>, b: &Arc<AlgebraSpec>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SpecMismatch)
    }
}

impl AlgebraElement {
    pub fn new(spec: Arc<AlgebraSpec>, slots: Vec<QMatrix>) -> Result<Self> {
        if slots.len() != spec.num_slots() {
            return Err(Error::InvalidSpec(format!(
                "element has {} slot matrices, spec has {} slots",
                slots.len(),
                spec.num_slots()
            )));
        }
        for (m, s) in slots.iter().zip(spec.slots()) {
            if m.rows() != s.degree || m.cols() != s.degree {
                return Err(Error::InvalidSpec(format!(
                    "slot {} expects a {}x{} matrix",
                    s.label, s.degree, s.degree
                )));
            }
        }
        Ok(Self { spec, slots })
    }

    pub fn from_fn(spec: Arc<AlgebraSpec>, mut f: impl FnMut(usize) -> QMatrix) -> Self {
        let slots = (0..spec.num_slots()).map(&mut f).collect();
        Self::new(spec, slots).expect("slot matrices sized by degree")
    }

    pub fn zero(spec: Arc<AlgebraSpec>) -> Self {
        let slots = spec.slots().iter().map(|s| QMatrix::zeros(s.degree, s.degree)).collect();
        Self { spec, slots }
    }

    pub fn one(spec: Arc<AlgebraSpec>) -> Self {
        let slots = spec.slots().iter().map(|s| QMatrix::identity(s.degree)).collect();
        Self { spec, slots }
    }

    /// `f · 1` for a function on the center.
    pub fn from_central(spec: Arc<AlgebraSpec>, f: &CentralFunction) -> Result<Self> {
        if f.space().as_ref() != spec.center_space().as_ref() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self::from_fn(spec.clone(), |s| {
            QMatrix::scalar(spec.slot(s).degree, f.value(s).clone())
        }))
    }

    pub fn from_central_projection(spec: Arc<AlgebraSpec>, z: &CentralProjection) -> Result<Self> {
        Self::from_central(spec, &z.as_function())
    }

    /// The minimal central projection supported on one slot.
    pub fn slot_unit(spec: Arc<AlgebraSpec>, slot: usize) -> Self {
        let mut x = Self::zero(spec);
        x.slots[slot] = QMatrix::identity(x.spec.slot(slot).degree);
        x
    }

    /// The basis vector `e_ij ⊗ δ_slot` for a global basis index.
    pub fn basis(spec: Arc<AlgebraSpec>, index: usize) -> Self {
        let (slot, i, j) = spec.basis_coords(index);
        let mut x = Self::zero(spec);
        x.slots[slot][(i, j)] = GaussianRational::from_int(1);
        x
    }

    /// Matrix unit `e_ij` (1-based) of `block`, at one atom or constant across
    /// the block's atoms; zero on every other block.
    pub fn matrix_unit(
        spec: Arc<AlgebraSpec>,
        block: usize,
        atom: Option<usize>,
        i: usize,
        j: usize,
    ) -> Result<Self> {
        let degree = spec.blocks()[block].degree;
        if i == 0 || j == 0 || i > degree || j > degree {
            return Err(Error::IndexOutOfRange { i, j, degree });
        }
        let targets: Vec<usize> = match atom {
            Some(a) => vec![spec.slot_index(block, a)],
            None => spec.block_slots(block).collect(),
        };
        let mut x = Self::zero(spec);
        for s in targets {
            x.slots[s] = QMatrix::unit(degree, i - 1, j - 1);
        }
        Ok(x)
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn slots(&self) -> &[QMatrix] {
        &self.slots
    }

    pub fn slot(&self, s: usize) -> &QMatrix {
        &self.slots[s]
    }

    pub fn slot_mut(&mut self, s: usize) -> &mut QMatrix {
        &mut self.slots[s]
    }

    pub fn into_slots(self) -> Vec<QMatrix> {
        self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(QMatrix::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.slots.iter().all(QMatrix::is_identity)
    }

    /// Slots where the element is nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.slots.len()).filter(|&s| !self.slots[s].is_zero()).collect()
    }

    /// Coordinates in the global basis, nonzero entries only.
    pub fn coordinates(&self) -> Vec<(usize, GaussianRational)> {
        let mut out = Vec::new();
        for (s, m) in self.slots.iter().enumerate() {
            let off = self.spec.slot(s).offset;
            for (k, e) in m.entries().iter().enumerate() {
                if !e.is_zero() {
                    out.push((off + k, e.clone()));
                }
            }
        }
        out
    }

    /// The entry at a global basis index.
    pub fn coordinate(&self, index: usize) -> &GaussianRational {
        let (s, i, j) = self.spec.basis_coords(index);
        &self.slots[s][(i, j)]
    }

    pub fn arith(&self, other: &Self, op: ElemOp) -> Result<Self> {
        if op == ElemOp::AdjointOfX {
            return Ok(self.adjoint());
        }
        same_spec(&self.spec, &other.spec)?;
        let slots = self
            .slots
            .iter()
            .zip(&other.slots)
            .map(|(a, b)| match op {
                ElemOp::Add => a + b,
                ElemOp::Mul => {
                    if a.is_zero() || b.is_zero() {
                        QMatrix::zeros(a.rows(), a.cols())
                    } else {
                        a * b
                    }
                }
                ElemOp::AdjointOfX => unreachable!(),
            })
            .collect();
        Ok(Self {
            spec: self.spec.clone(),
            slots,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.arith(other, ElemOp::Add)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.arith(other, ElemOp::Mul)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        same_spec(&self.spec, &other.spec)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&QMatrix, &QMatrix) -> QMatrix) -> Self {
        Self {
            spec: self.spec.clone(),
            slots: self.slots.iter().zip(&other.slots).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        self.map_slots(|_, m| m.adjoint())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_slots(|_, m| m.scale(c))
    }

    /// `f · x` for a central function `f` on the center space.
    pub fn central_mul(&self, f: &CentralFunction) -> Result<Self> {
        if f.space().as_ref() != self.spec.center_space().as_ref() {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.map_slots(|s, m| m.scale(f.value(s))))
    }

    pub fn map_slots(&self, mut f: impl FnMut(usize, &QMatrix) -> QMatrix) -> Self {
        Self {
            spec: self.spec.clone(),
            slots: self.slots.iter().enumerate().map(|(s, m)| f(s, m)).collect(),
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: &GaussianRational, other: &Self) {
        for (a, b) in self.slots.iter_mut().zip(&other.slots) {
            if !b.is_zero() {
                a.add_scaled(c, b);
            }
        }
    }

    /// True when every slot matrix is a scalar multiple of the identity.
    pub fn is_central(&self) -> bool {
        self.slots.iter().all(|m| {
            let c = &m[(0, 0)];
            *m == QMatrix::scalar(m.rows(), c.clone())
        })
    }

    /// Reads a central element back as a function on the center.
    pub fn as_central(&self) -> Option<CentralFunction> {
        if !self.is_central() {
            return None;
        }
        Some(CentralFunction::from_fn(self.spec.center_space().clone(), |s| {
            self.slots[s][(0, 0)].clone()
        }))
    }

    /// Exact inverse when every slot matrix is nonsingular.
    pub fn inverse(&self) -> Result<Self> {
        let slots = self
            .slots
            .iter()
            .enumerate()
            .map(|(s, m)| {
                m.inverse().ok_or_else(|| Error::NotInvertible {
                    slot: self.spec.slot(s).label.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec: self.spec.clone(),
            slots,
        })
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("elements of different specs")
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_sub(rhs).expect("elements of different specs")
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_mul(rhs).expect("elements of different specs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::spec::Block;
    use crate::measure::MeasureSpace;

    type Q = GaussianRational;

    #[test]
    fn matrix_unit_relations() {
        for n in 1..=4 {
            let spec = AlgebraSpec::single(n);
            let e = |i, j| AlgebraElement::matrix_unit(spec.clone(), 0, Some(0), i, j).unwrap();
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        for l in 1..=n {
                            let expected = if j == k {
                                e(i, l)
                            } else {
                                AlgebraElement::zero(spec.clone())
                            };
                            assert_eq!(&e(i, j) * &e(k, l), expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_units_sum_to_one() {
        let spec = Arc::new(
            AlgebraSpec::new(
                "s",
                vec![
                    Block::new("a", 2, MeasureSpace::uniform(3)),
                    Block::new("b", 3, MeasureSpace::uniform(1)),
                ],
            )
            .unwrap(),
        );
        let mut sum = AlgebraElement::zero(spec.clone());
        for (b, block) in spec.blocks().iter().enumerate() {
            for i in 1..=block.degree {
                sum = &sum + &AlgebraElement::matrix_unit(spec.clone(), b, None, i, i).unwrap();
            }
        }
        assert!(sum.is_one());
    }

    #[test]
    fn matrix_unit_examples() {
        let spec = AlgebraSpec::single(2);
        let e11 = AlgebraElement::matrix_unit(spec.clone(), 0, Some(0), 1, 1).unwrap();
        assert_eq!(e11.slot(0), &QMatrix::from_int_rows(&[&[1, 0], &[0, 0]]));
        let e12 = AlgebraElement::matrix_unit(spec.clone(), 0, Some(0), 1, 2).unwrap();
        assert_eq!(e11.arith(&e12, ElemOp::Mul).unwrap(), e12);
        assert!(matches!(
            AlgebraElement::matrix_unit(spec.clone(), 0, None, 3, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(AlgebraElement::matrix_unit(spec, 0, None, 0, 1).is_err());
    }

    #[test]
    fn adjoint_is_conjugate_transpose() {
        let spec = AlgebraSpec::single(2);
        let x = AlgebraElement::new(
            spec.clone(),
            vec![QMatrix::from_rows(vec![vec![Q::zero(), Q::i()], vec![Q::zero(), Q::zero()]])],
        )
        .unwrap();
        let expected = QMatrix::from_rows(vec![
            vec![Q::zero(), Q::zero()],
            vec![-Q::i(), Q::zero()],
        ]);
        assert_eq!(x.arith(&x, ElemOp::AdjointOfX).unwrap().slot(0), &expected);
    }

    #[test]
    fn spec_mismatch() {
        let x = AlgebraElement::one(AlgebraSpec::single(2));
        let y = AlgebraElement::one(AlgebraSpec::single(3));
        assert!(matches!(x.try_mul(&y), Err(Error::SpecMismatch)));
    }

    #[test]
    fn central_round_trip() {
        let spec = AlgebraSpec::homogeneous(2, 3);
        let f = CentralFunction::from_fn(spec.center_space().clone(), |s| Q::from_ints(s as i64, 1));
        let z = AlgebraElement::from_central(spec.clone(), &f).unwrap();
        assert!(z.is_central());
        assert_eq!(z.as_central().unwrap(), f);
        let e12 = AlgebraElement::matrix_unit(spec, 0, None, 1, 2).unwrap();
        assert!(!e12.is_central());
    }
}
