//! Time evolution: piecewise-exact unitary propagation, RK4 Lindblad
//! integration, path reconstruction and holonomy accumulators.

mod grid;
mod lindblad;
mod path;
mod unitary;

pub use grid::{Piece, TimeGrid, Trajectory};
pub use lindblad::{evolve_operators, propagate_lindblad, step_halving_discrepancy, LindbladOptions};
pub use path::{holonomy_accumulators, path_reconstruct, PathTrajectory};
pub use unitary::{propagate_unitary, propagate_unitary_recorded};
