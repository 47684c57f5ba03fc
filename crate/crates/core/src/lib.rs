//! Model structures, transfer systems and weak factorization systems on
//! finite lattices, with exact enumeration and brute-force oracles.

pub mod arrows;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod lattice;
pub mod localize;
pub mod model;
pub mod paths;
pub mod poset;
pub mod transfer;

pub use arrows::{ArrowSet, LatticeId};
pub use error::{EnumerateError, Error, LatticeError, ModelError, PathError, TransferError};
pub use lattice::{verify_lattice, Arrow, FiniteLattice, LatticeReport, LatticeSpec};
pub use localize::{LocalizationGraph, LocalizationWord};
pub use model::{ContractibleSelection, IntervalPartition, ModelStructure, ModelViolation, PremodelStructure};
pub use paths::{DyckPath, Endo, LatticePath};
pub use transfer::{TransferSystem, Wfs};
