//! Finite direct sums of matrix algebras over function rings, with the
//! lattice-theoretic and metric structure used by the rest of the crate.

mod center;
mod element;
mod norm;
mod projection;
mod spec;

pub use center::{
    center_valued_trace, central_cover, central_cover_by_block, minimal_central_projections,
};
pub use element::{AlgebraElement, ElemOp};
pub(crate) use element::same_spec;
pub use norm::{
    is_norm_zero, singular_values, singular_values_f64, vector_norm, NormValue, NORM_REL_BOUND,
};
pub use projection::{
    abelian_annihilator_test, dimension, equivalent, is_abelian, witness_vectors, FramePair,
    PartialIsometry, ProjectionElement,
};
pub use spec::{AlgebraSpec, Block, Slot};
