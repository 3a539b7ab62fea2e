use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::measure::MeasureSpace;

/// One homogeneous sector `M_n(Z)` with `Z` the functions on `space`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub id: String,
    pub degree: usize,
    pub space: Arc<MeasureSpace>,
}

impl Block {
    pub fn new(id: impl Into<String>, degree: usize, space: MeasureSpace) -> Self {
        Self {
            id: id.into(),
            degree,
            space: Arc::new(space),
        }
    }
}

/// A minimal central summand: one atom of one block, carrying an `n × n`
/// matrix algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub block: usize,
    pub atom: usize,
    pub degree: usize,
    /// Index of `e_11` at this slot in the global basis.
    pub offset: usize,
    pub label: String,
}

/// A finite direct sum of matrix algebras over function rings on finite
/// atomic measure spaces.
///
/// Blocks are kept sorted by id and no two blocks share a degree, so the
/// summand of each type `I_n` is unique. Slots enumerate `(block, atom)`
/// pairs in that canonical order; the global basis is
/// `e_ij ⊗ δ_slot`, row-major within each slot.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    id: String,
    blocks: Vec<Block>,
    slots: Vec<Slot>,
    center: Arc<MeasureSpace>,
    dim: usize,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.blocks == other.blocks
    }
}

impl Eq for AlgebraSpec {}

fn check_label(kind: &str, s: &str) -> Result<()> {
    if s.is_empty() || s.contains('/') {
        Err(Error::InvalidSpec(format!(
            "{kind} id {s:?} must be nonempty and free of '/'"
        )))
    } else {
        Ok(())
    }
}

impl AlgebraSpec {
    pub fn new(id: impl Into<String>, mut blocks: Vec<Block>) -> Result<Self> {
        let id = id.into();
        if blocks.is_empty() {
            return Err(Error::InvalidSpec("no blocks".into()));
        }
        blocks.sort_by(|a, b| a.id.cmp(&b.id));
        for w in blocks.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::InvalidSpec(format!("duplicate block id {:?}", w[0].id)));
            }
        }
        let mut seen_degrees = BTreeMap::new();
        for b in &blocks {
            check_label("block", &b.id)?;
            if b.degree == 0 {
                return Err(Error::InvalidSpec(format!("block {:?} has degree 0", b.id)));
            }
            if b.space.is_empty() {
                return Err(Error::InvalidSpec(format!("block {:?} has no atoms", b.id)));
            }
            for a in b.space.atoms() {
                check_label("atom", a)?;
            }
            if let Some(other) = seen_degrees.insert(b.degree, b.id.clone()) {
                return Err(Error::InvalidSpec(format!(
                    "blocks {other:?} and {:?} share degree {}; merge them",
                    b.id, b.degree
                )));
            }
        }

        let mut slots = Vec::new();
        let mut offset = 0;
        let mut center_atoms = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            for (ai, atom) in b.space.atoms().iter().enumerate() {
                let label = format!("{}/{}", b.id, atom);
                center_atoms.push((label.clone(), b.space.weight(ai).clone()));
                slots.push(Slot {
                    block: bi,
                    atom: ai,
                    degree: b.degree,
                    offset,
                    label,
                });
                offset += b.degree * b.degree;
            }
        }
        let center = Arc::new(MeasureSpace::new(center_atoms)?);
        Ok(Self {
            id,
            blocks,
            slots,
            center,
            dim: offset,
        })
    }

    /// Builds a spec after merging blocks of equal degree into one sector.
    ///
    /// The merged block keeps the id of the first block of that degree (in
    /// input order) and concatenates the atoms; atom ids must stay unique.
    pub fn merged(id: impl Into<String>, blocks: Vec<Block>) -> Result<Self> {
        type Sector = (usize, String, Vec<(String, crate::scalar::Rational)>);
        let mut by_degree: Vec<Sector> = Vec::new();
        for b in blocks {
            let atoms = b
                .space
                .atoms()
                .iter()
                .cloned()
                .zip(b.space.weights().iter().cloned());
            match by_degree.iter_mut().find(|(d, _, _)| *d == b.degree) {
                Some((_, _, acc)) => acc.extend(atoms),
                None => by_degree.push((b.degree, b.id.clone(), atoms.collect())),
            }
        }
        let merged = by_degree
            .into_iter()
            .map(|(degree, id, atoms)| {
                Ok(Block {
                    id,
                    degree,
                    space: Arc::new(MeasureSpace::new(atoms)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(id, merged)
    }

    /// `M_n` over a single atom of unit weight.
    pub fn single(degree: usize) -> Arc<Self> {
        Arc::new(
            Self::new("m", vec![Block::new("b", degree, MeasureSpace::uniform(1))])
                .expect("valid single-block spec"),
        )
    }

    /// `M_n` over `atoms` atoms of unit weight.
    pub fn homogeneous(degree: usize, atoms: usize) -> Arc<Self> {
        Arc::new(
            Self::new("m", vec![Block::new("b", degree, MeasureSpace::uniform(atoms))])
                .expect("valid homogeneous spec"),
        )
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn slot(&self, s: usize) -> &Slot {
        &self.slots[s]
    }

    pub fn num_slots(&self) -> usize {
        self.slots.len()
    }

    /// The measure space of the center: one atom per slot, labelled `block/atom`.
    pub fn center_space(&self) -> &Arc<MeasureSpace> {
        &self.center
    }

    /// Total linear dimension `Σ n² · |atoms|`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block_index(&self, id: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.id == id)
    }

    pub fn slot_index(&self, block: usize, atom: usize) -> usize {
        self.slots
            .iter()
            .position(|s| s.block == block && s.atom == atom)
            .expect("block/atom pair in range")
    }

    /// Slots of one block, in atom order.
    pub fn block_slots(&self, block: usize) -> impl Iterator<Item = usize> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(move |(_, s)| s.block == block)
            .map(|(i, _)| i)
    }

    pub fn slot_by_label(&self, label: &str) -> Option<usize> {
        self.center.index_of(label)
    }

    pub fn basis_index(&self, slot: usize, i: usize, j: usize) -> usize {
        let s = &self.slots[slot];
        s.offset + i * s.degree + j
    }

    /// `(slot, i, j)` of a basis index, 0-based.
    pub fn basis_coords(&self, index: usize) -> (usize, usize, usize) {
        let slot = self.slots.partition_point(|s| s.offset <= index) - 1;
        let s = &self.slots[slot];
        let r = index - s.offset;
        (slot, r / s.degree, r % s.degree)
    }

    /// `block/atom/i/j` with 1-based matrix indices.
    pub fn basis_label(&self, index: usize) -> String {
        let (slot, i, j) = self.basis_coords(index);
        format!("{}/{}/{}", self.slots[slot].label, i + 1, j + 1)
    }

    pub fn parse_basis_label(&self, label: &str) -> Option<usize> {
        let mut parts = label.rsplitn(3, '/');
        let j: usize = parts.next()?.parse().ok()?;
        let i: usize = parts.next()?.parse().ok()?;
        let slot = self.slot_by_label(parts.next()?)?;
        let n = self.slots[slot].degree;
        if i == 0 || j == 0 || i > n || j > n {
            return None;
        }
        Some(self.basis_index(slot, i - 1, j - 1))
    }
}
