//! Exact propagator simulation of naive and BB1-compensated rotations on
//! one spin and on a pair of Ising-coupled spins.
//!
//! - [`su`]: 2x2 / 4x4 complex matrices, product operators, exponentials,
//!   propagator fidelity.
//! - [`pulses`]: sequences, systematic error models, BB1 and robust CNOT
//!   builders, ideal gates.
//! - [`analysis`]: error sweeps, power-law fits of the infidelity, robust
//!   error ranges.
//! - [`cli`]: the `robust-ising` command-line tool.

pub mod analysis;
pub mod cli;
mod error;
pub mod pulses;
pub mod su;

pub use error::{Error, Result};
