//! qsimnet maps a finite-dimensional quantum Hamiltonian onto an
//! equivalent classical electrical network, simulates both sides, and
//! verifies that the circuit's port signals reproduce the quantum wave
//! function and its Born probabilities.
//!
//! The pipeline runs in five stages, one module each:
//!
//! * [`quantum`] — Hermitian Hamiltonians, exact Schrödinger evolution
//!   and Born probabilities (the ground-truth oracle).
//! * [`realify`] — decomplexification: the first-order block system and
//!   the decoupled second-order coefficient pair `(A, B)`.
//! * [`synthesis`] — the network of LC port tanks coupled by an
//!   interaction admittance `Y(s) = alpha + beta / s`, including the
//!   explicit two-level circuit and netlist export.
//! * [`sim`] — time-domain solution of the classical dynamics.
//! * [`signal`] — analytic-signal recovery of the wave function from the
//!   real port traces and quantitative verification.
//!
//! The [`cli`] module wires the stages into the `qsimnet` binary.

pub mod cli;
pub mod error;
mod linalg;
pub mod netlist;
pub mod quantum;
pub mod realify;
pub mod signal;
pub mod sim;
pub mod synthesis;

pub use error::{Error, Result};
