//! Dense complex linear algebra and state containers for small Hilbert
//! spaces (at most a few dozen levels).

mod linalg;
mod matrix;
mod state;

pub use linalg::{eigh, expm, expm_hermitian_step, solve, Eigh};
pub use matrix::{mul_adj_into, mul_into, CMatrix};
pub use state::{overlap_fidelity, unitary_distance_upto_phase, QuantumState, StateKind};

use crate::C64;

/// `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kron(b)
}

pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Pauli matrices and friends, basis order (|0⟩, |1⟩).
pub mod pauli {
    use super::{c, CMatrix};
    use alloc::vec;

    pub fn x() -> CMatrix {
        CMatrix::from_rows(2, 2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
    }
    pub fn y() -> CMatrix {
        CMatrix::from_rows(2, 2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
    }
    pub fn z() -> CMatrix {
        CMatrix::from_rows(2, 2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
    }
}

