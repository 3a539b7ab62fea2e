use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("central functions live on different measure spaces")]
    SpaceMismatch,
    #[error("elements belong to different algebra specs")]
    SpecMismatch,
    #[error("invalid neighborhood: {0}")]
    InvalidNeighborhood(String),
    #[error("invalid measure space: {0}")]
    InvalidSpace(String),
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),
    #[error("index ({i}, {j}) out of range for degree {degree}")]
    IndexOutOfRange { i: usize, j: usize, degree: usize },
    #[error("element is not a projection at slot {slot}")]
    NotAProjection { slot: String },
    #[error("element is not invertible at slot {slot}")]
    NotInvertible { slot: String },
    #[error("slot map sends {from} (degree {from_degree}) to {to} (degree {to_degree})")]
    DegreeMismatch {
        from: String,
        from_degree: usize,
        to: String,
        to_degree: usize,
    },
    #[error("invalid central slot map: {0}")]
    InvalidCentralMap(String),
    #[error("automorphism does not permute minimal central projections: {0}")]
    NotCentralPermutation(String),
    #[error("matrix-unit images admit no witness pair")]
    NoWitnessPair,
    #[error("decomposition does not reconstruct the automorphism at basis vector {0}")]
    ReconstructionFailure(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
}
