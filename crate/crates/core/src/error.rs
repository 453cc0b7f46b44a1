use crate::scalar::ScalarError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QpvError {
    #[error("unsupported type {series}{rank}")]
    UnsupportedType { series: char, rank: usize },
    #[error("node {node} is not admissible for {series}{rank}")]
    InadmissibleNode { series: char, rank: usize, node: usize },
    #[error("Weyl group exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("sign system has no solution")]
    UnsolvableSystem,
    #[error("weight {0:?} is not dominant for the acting indices")]
    NonDominantWeight(Vec<i64>),
    #[error("tensor square is not multiplicity free")]
    NotMultiplicityFree,
    #[error("spectral mismatch: {0}")]
    SpectralMismatch(String),
    #[error("relation space does not determine the inversion monomials")]
    LeadingTermDegenerate,
    #[error("overlap failure at word {0:?}")]
    OverlapFailure(Vec<usize>),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("exactness failure at bidegree ({j}, {k})")]
    ExactnessFailure { j: usize, k: usize },
    #[error("character mismatch: {0}")]
    Mismatch(String),
    #[error("weight {0:?} is outside the cone")]
    WeightNotInCone(Vec<i64>),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, QpvError>;
