//! Outer (minimum-phase) transfer functions, inner-outer factorization,
//! matrix spectral factorization, and the energy delay theorem for
//! polynomial (FIR) symbols on the unit circle.
//!
//! The library is organized around a few small ideas:
//!
//! - [`poly::Poly`] and [`matpoly::MatrixPoly`] are causal FIR transfer
//!   functions; their boundary behavior lives on power-of-two unit-circle
//!   grids ([`grid::GridSamples`]) connected to coefficients by the FFT.
//! - [`scalar`] splits a polynomial into a Blaschke product carrying its
//!   interior zeros and an outer factor carrying its gain, recovers outer
//!   functions from magnitude data, and certifies inner quotients.
//! - [`energy`] builds partial-energy curves and verifies that equal-gain
//!   transfer functions delay energy relative to the minimum-phase one
//!   (Robinson's energy delay theorem), in scalar and matrix form.
//! - [`matfact`] computes outer spectral factors of matrix densities
//!   `S = A A^H` by Bauer's block Toeplitz method and builds the
//!   Blaschke-Potapov inner factors that generate equal-gain companions.
//! - [`harness`] gives the whole pipeline a file format, a sweep runner and
//!   a small CLI.
//!
//! The `examples/` directory is the guided tour: each major capability has
//! a runnable walkthrough (`cargo run --example minimum_phase`, etc.).

pub mod energy;
pub mod error;
pub mod grid;
pub mod harness;
pub mod matfact;
pub mod matpoly;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use grid::{default_grid_for, GridSamples, MatrixSamples, ScalarSamples};
pub use matpoly::MatrixPoly;
pub use poly::Poly;

/// Relative boundary-gain agreement required before two transfer functions
/// are treated as comparable (equal-gain) by quotients and verifiers.
pub const EQUAL_GAIN_TOL: f64 = 1e-6;
