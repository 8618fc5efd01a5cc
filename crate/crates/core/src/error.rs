use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected {expected} arguments, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("slot {slot} out of range for a tensor of order {order}")]
    SlotOutOfRange { slot: usize, order: usize },

    #[error("slot {slot} is not covariant")]
    NotCovariant { slot: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails at ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("metric is not symmetric positive definite: {0}")]
    InvalidMetric(String),

    #[error("structure fails {axiom}: {detail}")]
    Axiom { axiom: &'static str, detail: String },

    #[error("vector is not in the contact distribution (eta(U) = {0})")]
    NotInDistribution(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    TooLarge { dim: usize, max: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
