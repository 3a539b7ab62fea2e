//! Exact finite models of type I von Neumann algebras over atomic measure
//! spaces, their automorphisms, and the factorization of every automorphism
//! into an inner part and a center-induced part.
//!
//! The model is a finite direct sum `⊕_n M_n(Z_n)` where each `Z_n` is the
//! algebra of functions on a finite atomic measure space. Scalars are
//! Gaussian rationals, so all algebraic identities are checked exactly; only
//! operator norms and singular values are computed in floating point.

pub mod algebra;
pub mod automorphism;
pub mod decompose;
pub mod error;
pub mod matrix;
pub mod measure;
pub mod random;
pub mod scalar;
pub mod topology;

pub use algebra::{AlgebraElement, AlgebraSpec, Block, ProjectionElement};
pub use automorphism::{Automorphism, CentralAutomorphism, Generator, ValidationReport};
pub use decompose::{Classification, Decomposition};
pub use error::{Error, Result};
pub use matrix::QMatrix;
pub use measure::{
    CentralFunction, CentralProjection, MeasureSpace, MembershipVerdict, NeighborhoodSpec, Status,
};
pub use scalar::{GaussianRational, Rational};
pub use topology::Report;
