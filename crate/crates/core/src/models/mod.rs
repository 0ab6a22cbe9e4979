//! Hamiltonians, error terms and collapse operators for the Λ-system and
//! the superconducting logical-qubit circuits.

mod basis;
mod lambda;
mod noise;
mod transmon;
mod twoqubit;

pub use basis::{lowering, number, ProductBasis, Subspace};
pub use lambda::{lambda_collapse_ops, lambda_hamiltonian, LambdaModel, LAMBDA_LABELS};
pub use noise::{Channel, NoiseModel};
pub use transmon::{
    sc_collapse_ops, sc_driven_hamiltonian, sc_effective_hamiltonian, sc_error_hamiltonians, Arm,
    Coupling, DriveSpec, NoiseConfig, PhaseProgram, ScConfig, ScErrors, Site, SingleLogicalQubit,
    TransmonChainModel,
};
pub use twoqubit::{
    cp_target, dfs_encode, two_qubit_hamiltonian, Dfs, TwoLogicalQubit, TwoQubitMode, TwoQubitParams,
};

/// `2π × 1 MHz` in rad/µs.
pub const MHZ: f64 = 2.0 * core::f64::consts::PI;
