//! Pulse synthesis and open-quantum-system simulation for path-optimized
//! nonadiabatic holonomic gates.
//!
//! The crate is `no_std` (it needs `alloc`). Transcendental functions come
//! from `libm` through [`num_traits::Float`], so results are identical on
//! every target. File formats, the parallel sweep runner and the command
//! line live in the `holopath` companion crate.
//!
//! Module map:
//!
//! * [`qcore`]: dense complex matrices, states, `expm`, Hermitian eigensolver.
//! * [`pathsynth`]: gate/path specs and the three-segment pulse recipe.
//! * [`models`]: Λ-system, transmon chains, DFS encodings, collapse operators.
//! * [`dynamics`]: unitary and Lindblad propagation, path reconstruction,
//!   holonomy accumulators.
//! * [`metrics`]: gate and state fidelities.
//! * [`sweeps`]: figure-level grid experiments.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dynamics;
pub mod error;
pub mod metrics;
pub mod models;
pub mod num;
pub mod pathsynth;
pub mod qcore;
pub mod special;
pub mod sweeps;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
