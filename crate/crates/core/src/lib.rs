//! Simulation library for measurement-assisted entanglement concentration.
//!
//! The crate covers four layers, bottom up:
//!
//! - [`qcore`]: dense pure states and density matrices on up to six qubits,
//!   a small Hermitian eigensolver, and the scalar measures used everywhere
//!   else (singlet conversion probability, pairwise `E2`, Wootters
//!   concurrence, three-tangle, von Neumann entropy, robustness of
//!   imaginarity).
//! - [`bases`]: single-qubit real/complex bases, the eight-element GHZ basis
//!   and the GHZ-W ("GW") basis, with verification and basis statistics.
//! - [`assist`]: entanglement of assistance on three-qubit pure states and
//!   the yield of a helper measuring in a given single-qubit basis.
//! - [`swap`]: three-qubit entanglement swapping of three partially
//!   entangled pairs, closed-form yields and the GW/GHZ crossover.
//! - [`perc`]: honeycomb to triangular contraction, Monte Carlo site/bond
//!   percolation and the GW-vs-GHZ strategy report.

pub mod assist;
pub mod bases;
mod error;
pub mod perc;
pub mod qcore;
pub mod swap;
pub mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
