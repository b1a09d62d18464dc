//! Entanglement percolation on a honeycomb network.
//!
//! Every second node of a honeycomb lattice measures its three qubits
//! jointly, which turns the lattice into a triangular one whose elementary
//! triangles hold three-qubit entangled states. Treating each triangle as a
//! Bell pair obtained with probability `p0` reduces the question to site
//! percolation on the triangular lattice (threshold 1/2), compared against
//! bond percolation on the honeycomb (threshold `1 − 2 sin(π/18)`).
//!
//! The reduction is taken as given: the bookkeeping of how two occupied
//! triangles sharing a passive node are joined into a longer bond is not
//! modeled.

mod lattice;
mod monte_carlo;
mod strategy;

pub use lattice::{build_honeycomb, contract_to_triangular, Boundary, HoneycombLattice, Sublattice, TriangularSiteGraph};
pub use monte_carlo::{
    estimate_bond_threshold_honeycomb, estimate_site_threshold, estimate_threshold,
    site_percolation_trial, spanning_curve, spanning_point, trial_rng, PercolationEstimate,
    PercolationModel, PercolationTrialConfig, SpanningModel, SpanningPoint, THRESHOLD_ITERATIONS,
};
pub use strategy::{
    p0_of_phi1, phi1_percolation_threshold, strategy_report, StrategyReport,
    HONEYCOMB_BOND_THRESHOLD, TRIANGULAR_SITE_THRESHOLD,
};
