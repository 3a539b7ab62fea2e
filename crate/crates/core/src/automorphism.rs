//! Automorphisms of the finite model, given extensionally by the images of
//! the basis vectors `e_ij ⊗ δ_slot`.
//!
//! Automorphisms here are linear over the scalars. On a finite atomic center
//! every such automorphism of the center permutes the minimal central
//! projections, so center automorphisms are exactly the degree-preserving slot
//! permutations ([`CentralAutomorphism`]), and an automorphism is band
//! preserving exactly when it fixes the center pointwise.

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{same_spec, AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::measure::CentralFunction;
use crate::scalar::GaussianRational;

/// A degree-preserving bijection of slots; `map[s]` is the image of slot `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralAutomorphism {
    spec: Arc<AlgebraSpec>,
    map: Vec<usize>,
}

impl CentralAutomorphism {
    pub fn new(spec: Arc<AlgebraSpec>, map: Vec<usize>) -> Result<Self> {
        let n = spec.num_slots();
        if map.len() != n {
            return Err(Error::InvalidCentralMap(format!(
                "map covers {} of {n} slots",
                map.len()
            )));
        }
        let mut hit = vec![false; n];
        for &t in &map {
            if t >= n || std::mem::replace(&mut hit[t], true) {
                return Err(Error::InvalidCentralMap("map is not a bijection".into()));
            }
        }
        for (s, &t) in map.iter().enumerate() {
            let (from, to) = (spec.slot(s), spec.slot(t));
            if from.degree != to.degree {
                return Err(Error::DegreeMismatch {
                    from: from.label.clone(),
                    from_degree: from.degree,
                    to: to.label.clone(),
                    to_degree: to.degree,
                });
            }
        }
        Ok(Self { spec, map })
    }

    pub fn identity(spec: Arc<AlgebraSpec>) -> Self {
        let map = (0..spec.num_slots()).collect();
        Self { spec, map }
    }

    /// From `(source, target)` slot-label pairs; unlisted slots are fixed.
    pub fn from_pairs(spec: Arc<AlgebraSpec>, pairs: &[(String, String)]) -> Result<Self> {
        let mut map: Vec<usize> = (0..spec.num_slots()).collect();
        let mut seen = vec![false; map.len()];
        for (from, to) in pairs {
            let lookup = |l: &str| {
                spec.slot_by_label(l)
                    .ok_or_else(|| Error::InvalidCentralMap(format!("unknown slot {l:?}")))
            };
            let (s, t) = (lookup(from)?, lookup(to)?);
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidCentralMap(format!("slot {from:?} mapped twice")));
            }
            map[s] = t;
        }
        Self::new(spec, map)
    }

    /// Exchanges two slots.
    pub fn swap(spec: Arc<AlgebraSpec>, a: usize, b: usize) -> Result<Self> {
        let mut map: Vec<usize> = (0..spec.num_slots()).collect();
        map.swap(a, b);
        Self::new(spec, map)
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, slot: usize) -> usize {
        self.map[slot]
    }

    /// All `(source, target)` label pairs, in slot order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(s, &t)| (self.spec.slot(s).label.clone(), self.spec.slot(t).label.clone()))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(s, &t)| s == t)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        same_spec(&self.spec, &other.spec)?;
        Ok(Self {
            spec: self.spec.clone(),
            map: other.map.iter().map(|&s| self.map[s]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for (s, &t) in self.map.iter().enumerate() {
            map[t] = s;
        }
        Self {
            spec: self.spec.clone(),
            map,
        }
    }

    /// `φ(f)(φ(s)) = f(s)`.
    pub fn apply_central(&self, f: &CentralFunction) -> CentralFunction {
        f.transport(&self.map)
    }
}

/// A generator of an automorphism word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Inner(AlgebraElement),
    Central(CentralAutomorphism),
}

/// An invertible element together with its exact inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerWitness {
    pub a: AlgebraElement,
    pub a_inv: AlgebraElement,
}

impl InnerWitness {
    pub fn new(a: AlgebraElement) -> Result<Self> {
        let a_inv = a.inverse()?;
        Ok(Self { a, a_inv })
    }

    pub fn verify(&self) -> bool {
        (&self.a * &self.a_inv).is_one() && (&self.a_inv * &self.a).is_one()
    }

    /// `a x a⁻¹`.
    pub fn conjugate(&self, x: &AlgebraElement) -> AlgebraElement {
        conjugate_sparse(&self.a, &self.a_inv, x)
    }
}

fn conjugate_sparse(a: &AlgebraElement, a_inv: &AlgebraElement, x: &AlgebraElement) -> AlgebraElement {
    x.map_slots(|s, m| {
        if m.is_zero() {
            m.clone()
        } else {
            &(a.slot(s) * m) * a_inv.slot(s)
        }
    })
}

/// A validated automorphism.
#[derive(Debug, Clone)]
pub struct Automorphism {
    spec: Arc<AlgebraSpec>,
    images: Vec<AlgebraElement>,
    supports: Vec<Vec<usize>>,
    word: Option<Vec<Generator>>,
}

impl PartialEq for Automorphism {
    /// Equality of the linear maps; words are provenance and are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.images == other.images
    }
}

impl Automorphism {
    fn from_parts(
        spec: Arc<AlgebraSpec>,
        images: Vec<AlgebraElement>,
        word: Option<Vec<Generator>>,
    ) -> Self {
        let supports = images.iter().map(AlgebraElement::support).collect();
        Self {
            spec,
            images,
            supports,
            word,
        }
    }

    pub fn identity(spec: Arc<AlgebraSpec>) -> Self {
        let images = (0..spec.dim())
            .map(|b| AlgebraElement::basis(spec.clone(), b))
            .collect();
        Self::from_parts(spec, images, Some(Vec::new()))
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn basis_images(&self) -> &[AlgebraElement] {
        &self.images
    }

    pub fn image(&self, basis: usize) -> &AlgebraElement {
        &self.images[basis]
    }

    pub fn word(&self) -> Option<&[Generator]> {
        self.word.as_deref()
    }

    pub fn without_word(mut self) -> Self {
        self.word = None;
        self
    }

    /// Linear extension `T(x) = Σ x_b T(b)`.
    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        same_spec(&self.spec, x.spec())?;
        let mut out = AlgebraElement::zero(self.spec.clone());
        for (b, c) in x.coordinates() {
            for &t in &self.supports[b] {
                out.slot_mut(t).add_scaled(&c, self.images[b].slot(t));
            }
        }
        Ok(out)
    }

    /// Images of the minimal central projections.
    pub fn central_images(&self) -> Vec<AlgebraElement> {
        (0..self.spec.num_slots())
            .map(|s| {
                let z = AlgebraElement::slot_unit(self.spec.clone(), s);
                self.apply(&z).expect("same spec")
            })
            .collect()
    }

    pub fn is_center_fixing(&self) -> bool {
        self.central_images()
            .iter()
            .enumerate()
            .all(|(s, tz)| *tz == AlgebraElement::slot_unit(self.spec.clone(), s))
    }

    /// `T(z b) = z T(b)` for every minimal central `z` and basis vector `b`.
    ///
    /// `z b` is `b` when `z` sits at the slot of `b` and zero otherwise, so the
    /// identity says that `T(b)` lives in the slot of `b`.
    pub fn is_band_preserving(&self) -> bool {
        (0..self.spec.dim()).all(|b| {
            let (home, _, _) = self.spec.basis_coords(b);
            (0..self.spec.num_slots()).all(|z| {
                let lhs_nonzero = z == home && !self.images[b].is_zero();
                let rhs = self.images[b].slot(z);
                if z == home {
                    lhs_nonzero || rhs.is_zero()
                } else {
                    rhs.is_zero()
                }
            })
        })
    }
}

/// `T_a(x) = a x a⁻¹`.
pub fn make_inner(a: &AlgebraElement) -> Result<Automorphism> {
    let witness = InnerWitness::new(a.clone())?;
    let spec = a.spec().clone();
    let images = (0..spec.dim())
        .map(|b| witness.conjugate(&AlgebraElement::basis(spec.clone(), b)))
        .collect();
    Ok(Automorphism::from_parts(
        spec,
        images,
        Some(vec![Generator::Inner(a.clone())]),
    ))
}

/// `T_φ(Σ a_ij e_ij) = Σ φ(a_ij) e_ij`: each slot matrix moves unchanged to
/// the image slot.
pub fn make_central(phi: &CentralAutomorphism) -> Automorphism {
    let spec = phi.spec().clone();
    let images = (0..spec.dim())
        .map(|b| {
            let (s, i, j) = spec.basis_coords(b);
            AlgebraElement::basis(spec.clone(), spec.basis_index(phi.image(s), i, j))
        })
        .collect();
    Automorphism::from_parts(spec, images, Some(vec![Generator::Central(phi.clone())]))
}

pub fn generator_automorphism(g: &Generator) -> Result<Automorphism> {
    match g {
        Generator::Inner(a) => make_inner(a),
        Generator::Central(phi) => Ok(make_central(phi)),
    }
}

/// `T ∘ S`; words concatenate.
pub fn compose(t: &Automorphism, s: &Automorphism) -> Result<Automorphism> {
    same_spec(&t.spec, &s.spec)?;
    let images = s
        .images
        .par_iter()
        .map(|x| t.apply(x))
        .collect::<Result<Vec<_>>>()?;
    let word = match (&t.word, &s.word) {
        (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
        _ => None,
    };
    Ok(Automorphism::from_parts(t.spec.clone(), images, word))
}

/// Evaluates `g₁ ∘ g₂ ∘ … ∘ g_k`.
pub fn evaluate_word(spec: Arc<AlgebraSpec>, word: &[Generator]) -> Result<Automorphism> {
    let mut acc = Automorphism::identity(spec);
    for g in word {
        acc = compose(&acc, &generator_automorphism(g)?)?;
    }
    Ok(acc)
}

/// Connected components of the bipartite row/column incidence of the map's
/// matrix; each component is an independent square block for a bijection.
fn components(spec: &AlgebraSpec, images: &[AlgebraElement]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let dim = spec.dim();
    // nodes 0..dim are columns, dim..2dim are rows
    let mut parent: Vec<usize> = (0..2 * dim).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (col, img) in images.iter().enumerate() {
        for (row, _) in img.coordinates() {
            let (a, b) = (find(&mut parent, col), find(&mut parent, dim + row));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> =
        Default::default();
    for node in 0..2 * dim {
        let root = find(&mut parent, node);
        let entry = groups.entry(root).or_default();
        if node < dim {
            entry.1.push(node);
        } else {
            entry.0.push(node - dim);
        }
    }
    groups.into_values().collect()
}

fn submatrix(images: &[AlgebraElement], rows: &[usize], cols: &[usize]) -> QMatrix {
    QMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        images[cols[j]].coordinate(rows[i]).clone()
    })
}

/// Exact rank of the `dim × dim` matrix of the linear map.
pub fn linear_rank(spec: &AlgebraSpec, images: &[AlgebraElement]) -> usize {
    components(spec, images)
        .into_iter()
        .filter(|(r, c)| !r.is_empty() && !c.is_empty())
        .map(|(r, c)| submatrix(images, &r, &c).rank())
        .sum()
}

/// Exact inverse by solving the linear system blockwise.
pub fn invert(t: &Automorphism) -> Automorphism {
    let spec = t.spec.clone();
    let mut images = vec![AlgebraElement::zero(spec.clone()); spec.dim()];
    for (rows, cols) in components(&spec, &t.images) {
        let m = submatrix(&t.images, &rows, &cols);
        let inv = m.inverse().expect("validated automorphisms are bijective");
        for (i, &r) in rows.iter().enumerate() {
            let img = &mut images[r];
            for (j, &c) in cols.iter().enumerate() {
                let v = &inv[(j, i)];
                if !v.is_zero() {
                    let (s, a, b) = spec.basis_coords(c);
                    img.slot_mut(s)[(a, b)] = v.clone();
                }
            }
        }
    }
    let word = t.word.as_ref().map(|w| {
        w.iter()
            .rev()
            .map(|g| match g {
                Generator::Inner(a) => {
                    Generator::Inner(a.inverse().expect("inner generators are invertible"))
                }
                Generator::Central(phi) => Generator::Central(phi.inverse()),
            })
            .collect()
    });
    Automorphism::from_parts(spec, images, word)
}

/// A pair of basis vectors on which multiplicativity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    /// Problems with the table itself (missing entries, wrong spec).
    pub table_errors: Vec<String>,
    pub unital: bool,
    pub rank: usize,
    /// First failing pairs, in basis order (at most [`MAX_REPORTED_PAIRS`]).
    pub failing_pairs: Vec<PairFailure>,
    pub failure_count: usize,
    /// `Some(false)` when a supplied word does not evaluate to the table.
    pub word_consistent: Option<bool>,
}

pub const MAX_REPORTED_PAIRS: usize = 10;

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.table_errors.is_empty()
            && self.unital
            && self.rank == self.dim
            && self.failure_count == 0
            && self.word_consistent != Some(false)
    }

    pub fn summary(&self, spec: &AlgebraSpec) -> String {
        let mut lines = Vec::new();
        lines.extend(self.table_errors.iter().cloned());
        if !self.unital {
            lines.push("T(1) != 1".to_string());
        }
        if self.rank != self.dim {
            lines.push(format!("rank {} < dimension {}", self.rank, self.dim));
        }
        for f in &self.failing_pairs {
            let (l, r) = (spec.basis_label(f.left), spec.basis_label(f.right));
            lines.push(format!("T({l} * {r}) != T({l}) T({r})"));
        }
        if self.failure_count > self.failing_pairs.len() {
            lines.push(format!(
                "... {} failing pairs in total",
                self.failure_count
            ));
        }
        if self.word_consistent == Some(false) {
            lines.push("word does not evaluate to the basis-image table".to_string());
        }
        lines.join("\n")
    }
}

/// `b₁ b₂` for basis vectors, as a basis index (or zero).
fn basis_product(spec: &AlgebraSpec, b1: usize, b2: usize) -> Option<usize> {
    let (s1, i, j) = spec.basis_coords(b1);
    let (s2, k, l) = spec.basis_coords(b2);
    (s1 == s2 && j == k).then(|| spec.basis_index(s1, i, l))
}

/// Whether `x y == expected`, computing only slots where both are nonzero.
fn product_matches(x: &AlgebraElement, y: &AlgebraElement, expected: Option<&AlgebraElement>) -> bool {
    (0..x.slots().len()).all(|s| {
        let (a, b) = (x.slot(s), y.slot(s));
        let e = expected.map(|e| e.slot(s));
        if a.is_zero() || b.is_zero() {
            e.is_none_or(QMatrix::is_zero)
        } else {
            let p = a * b;
            match e {
                Some(e) => &p == e,
                None => p.is_zero(),
            }
        }
    })
}

/// Checks that a basis-image table is an automorphism: unital, multiplicative
/// on every basis pair, and of full rank. All checks are exact.
pub fn validate(
    spec: Arc<AlgebraSpec>,
    images: Vec<AlgebraElement>,
    word: Option<Vec<Generator>>,
) -> std::result::Result<Automorphism, ValidationReport> {
    let dim = spec.dim();
    let mut report = ValidationReport {
        dim,
        table_errors: Vec::new(),
        unital: false,
        rank: 0,
        failing_pairs: Vec::new(),
        failure_count: 0,
        word_consistent: None,
    };
    if images.len() != dim {
        report
            .table_errors
            .push(format!("table has {} images for {dim} basis vectors", images.len()));
        return Err(report);
    }
    for (b, img) in images.iter().enumerate() {
        if same_spec(&spec, img.spec()).is_err() {
            report
                .table_errors
                .push(format!("image of {} belongs to another spec", spec.basis_label(b)));
        }
    }
    if !report.table_errors.is_empty() {
        return Err(report);
    }

    let mut unit = AlgebraElement::zero(spec.clone());
    for s in 0..spec.num_slots() {
        for i in 0..spec.slot(s).degree {
            unit.add_scaled(&GaussianRational::one(), &images[spec.basis_index(s, i, i)]);
        }
    }
    report.unital = unit.is_one();

    let failures: Vec<PairFailure> = (0..dim)
        .into_par_iter()
        .flat_map_iter(|b1| {
            let spec = &spec;
            let images = &images;
            (0..dim).filter_map(move |b2| {
                let expected = basis_product(spec, b1, b2).map(|b| &images[b]);
                (!product_matches(&images[b1], &images[b2], expected))
                    .then_some(PairFailure { left: b1, right: b2 })
            })
        })
        .collect();
    report.failure_count = failures.len();
    report.failing_pairs = failures.into_iter().take(MAX_REPORTED_PAIRS).collect();
    report.rank = linear_rank(&spec, &images);

    if let Some(w) = &word {
        report.word_consistent = Some(match evaluate_word(spec.clone(), w) {
            Ok(t) => t.images == images,
            Err(_) => false,
        });
    }

    if report.is_valid() {
        Ok(Automorphism::from_parts(spec, images, word))
    } else {
        Err(report)
    }
}

/// Re-validates an automorphism produced elsewhere (e.g. deserialized).
pub fn revalidate(t: &Automorphism) -> std::result::Result<Automorphism, ValidationReport> {
    validate(t.spec.clone(), t.images.clone(), t.word.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Block;
    use crate::measure::MeasureSpace;

    fn elem(spec: &Arc<AlgebraSpec>, slots: Vec<QMatrix>) -> AlgebraElement {
        AlgebraElement::new(spec.clone(), slots).unwrap()
    }

    #[test]
    fn inner_identity_and_example() {
        let spec = AlgebraSpec::single(2);
        let id = make_inner(&AlgebraElement::one(spec.clone())).unwrap();
        assert_eq!(id, Automorphism::identity(spec.clone()));

        // a = [[1,1],[0,1]], a⁻¹ = [[1,-1],[0,1]]: a e11 a⁻¹ = [[1,-1],[0,0]]
        let a = elem(&spec, vec![QMatrix::from_int_rows(&[&[1, 1], &[0, 1]])]);
        let t = make_inner(&a).unwrap();
        assert_eq!(t.image(0).slot(0), &QMatrix::from_int_rows(&[&[1, -1], &[0, 0]]));
    }

    #[test]
    fn singular_inner_rejected() {
        let spec = AlgebraSpec::homogeneous(2, 2);
        let a = elem(
            &spec,
            vec![QMatrix::identity(2), QMatrix::from_int_rows(&[&[1, 2], &[2, 4]])],
        );
        match make_inner(&a) {
            Err(Error::NotInvertible { slot }) => assert_eq!(slot, "b/w1"),
            other => panic!("expected NotInvertible, got {other:?}"),
        }
    }

    #[test]
    fn central_swap_moves_slots() {
        let spec = AlgebraSpec::homogeneous(2, 2);
        let phi = CentralAutomorphism::swap(spec.clone(), 0, 1).unwrap();
        let t = make_central(&phi);
        let x = elem(
            &spec,
            vec![
                QMatrix::from_int_rows(&[&[1, 2], &[3, 4]]),
                QMatrix::from_int_rows(&[&[5, 6], &[7, 8]]),
            ],
        );
        let y = t.apply(&x).unwrap();
        assert_eq!(y.slot(0), x.slot(1));
        assert_eq!(y.slot(1), x.slot(0));
        assert_eq!(make_central(&CentralAutomorphism::identity(spec.clone())), Automorphism::identity(spec));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let spec = Arc::new(
            AlgebraSpec::new(
                "s",
                vec![
                    Block::new("a", 1, MeasureSpace::uniform(1)),
                    Block::new("b", 2, MeasureSpace::uniform(1)),
                ],
            )
            .unwrap(),
        );
        assert!(matches!(
            CentralAutomorphism::swap(spec, 0, 1),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn broken_table_reports_first_pair() {
        let spec = AlgebraSpec::single(2);
        let mut images: Vec<_> = (0..4).map(|b| AlgebraElement::basis(spec.clone(), b)).collect();
        images[1] = AlgebraElement::zero(spec.clone());
        let report = validate(spec.clone(), images, None).unwrap_err();
        assert!(report.unital);
        assert_eq!(report.failing_pairs[0], PairFailure { left: 1, right: 2 });
        assert_eq!(spec.basis_label(1), "b/w0/1/2");
        assert!(report.rank < 4);
    }

    #[test]
    fn identity_table_is_valid() {
        let spec = AlgebraSpec::homogeneous(3, 2);
        let images = (0..spec.dim()).map(|b| AlgebraElement::basis(spec.clone(), b)).collect();
        assert!(validate(spec, images, None).is_ok());
    }

    #[test]
    fn inverse_of_central_and_inner() {
        let spec = AlgebraSpec::homogeneous(2, 3);
        let phi = CentralAutomorphism::new(spec.clone(), vec![1, 2, 0]).unwrap();
        let inv = invert(&make_central(&phi));
        assert_eq!(inv, make_central(&phi.inverse()));
        assert_eq!(inv.word(), Some(&[Generator::Central(phi.inverse())][..]));

        let a = elem(
            &spec,
            vec![
                QMatrix::from_int_rows(&[&[1, 1], &[0, 1]]),
                QMatrix::from_int_rows(&[&[2, 0], &[1, 1]]),
                QMatrix::from_int_rows(&[&[0, 1], &[1, 0]]),
            ],
        );
        let t = make_inner(&a).unwrap();
        assert_eq!(invert(&t), make_inner(&a.inverse().unwrap()).unwrap());
        assert_eq!(compose(&t, &invert(&t)).unwrap(), Automorphism::identity(spec));
    }

    #[test]
    fn band_preservation() {
        let spec = AlgebraSpec::homogeneous(2, 2);
        let a = elem(
            &spec,
            vec![QMatrix::from_int_rows(&[&[1, 1], &[0, 1]]), QMatrix::identity(2)],
        );
        let inner = make_inner(&a).unwrap();
        assert!(inner.is_band_preserving());
        assert!(inner.is_center_fixing());
        let swap = make_central(&CentralAutomorphism::swap(spec.clone(), 0, 1).unwrap());
        assert!(!swap.is_band_preserving());
        assert!(!swap.is_center_fixing());
        assert!(Automorphism::identity(spec).is_center_fixing());
    }
}
