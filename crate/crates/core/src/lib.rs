//! Optimized swap networks for arbitrary qubit connectivity, embedded into
//! layered variational ansaetze, with a statevector VQE harness to measure
//! what the embedding buys.
//!
//! The pieces, bottom up:
//!
//! - [`graph`]: labelled connectivity graphs, swap layers, the history
//!   matrix and connectivity coarsening.
//! - [`router`]: the annealing-based swap-network optimizer and an
//!   exhaustive oracle for small graphs.
//! - [`circuit`]: gate IR, native-gate decompositions, resource metrics and
//!   the ansatz builders.
//! - [`hamiltonian`]: Pauli sums, random spin glasses, exact ground states.
//! - [`sim`]: dense statevector simulation and expectation values.
//! - [`vqe`]: optimizers and the variational loop.
//! - [`bench`]: benchmark grids and summary statistics.

pub mod bench;
pub mod circuit;
pub mod error;
pub mod graph;
pub mod hamiltonian;
pub mod router;
pub mod sim;
pub mod vqe;

pub use error::{Error, Result};
