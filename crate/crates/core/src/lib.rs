//! Exact computations in the quantum sphere Hopf–Galois extension and its
//! Ehresmann–Schauenburg bialgebroid.

pub mod algebroid;
pub mod antipodes;
pub mod error;
pub mod galois;
pub mod kernel;
pub mod quantum_spaces;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
