use thiserror::Error;

use crate::lattice::{Arrow, LatticeReport};
use crate::model::ModelViolation;
use crate::transfer::TransferViolation;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("product of zero factors")]
    EmptyProduct,
    #[error("element {element} out of range for a lattice of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("relation has {len} entries, expected {size}x{size}")]
    RelationShape { size: usize, len: usize },
    #[error("not a lattice: {0}")]
    NotALattice(LatticeReport),
    #[error("{0} is not a comparable pair")]
    NotComparable(Arrow),
}

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("arrow set belongs to a different lattice")]
    CarrierMismatch,
    #[error("not a transfer system: {0}")]
    Violation(TransferViolation),
    #[error("{0} is not a chain")]
    NotAChain(String),
    #[error("left class by lifting differs from the complement of the downward extension at {0}")]
    Inconsistent(Arrow),
    #[error("expected exactly one pivot, found {0}")]
    Pivot(usize),
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("{0} is not a chain")]
    NotAChain(String),
    #[error("[{lo}, {hi}] is not a weak equivalence class")]
    NotAClass { lo: usize, hi: usize },
    #[error("right classes are not nested: {0} is in the first but not the second")]
    NotNested(Arrow),
    #[error("invalid selection: {0}")]
    Selection(String),
    #[error("not a model structure: {0}")]
    Invalid(ModelViolation),
    #[error("index {i} out of range for [{n}]")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("malformed path: {0}")]
    Malformed(String),
    #[error("not weakly monotone at position {0}")]
    NotMonotone(usize),
    #[error("value {value} at position {index} is outside [0, {max}]")]
    OutOfRange { index: usize, value: usize, max: usize },
}

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("{pairs} non-identity comparable pairs exceeds the oracle cap of {cap}")]
    CapExceeded { pairs: usize, cap: usize },
    #[error("k = {k} out of range for n = {n}")]
    OutOfRange { n: usize, k: usize },
}

/// Any error raised by the library, for callers that do not care which layer
/// produced it.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
