//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use modelcat::enumerate::enumerate_models;
use modelcat::{FiniteLattice, ModelStructure};

/// Chain sizes used by the enumeration benchmarks.
pub const CHAIN_SIZES: [usize; 4] = [3, 5, 7, 9];

pub fn chain(n: usize) -> Arc<FiniteLattice> {
    FiniteLattice::chain(n).into_shared()
}

pub fn models_on(n: usize) -> Vec<ModelStructure> {
    enumerate_models(n).collect()
}
