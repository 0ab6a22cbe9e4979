//! Grid experiments: an axis/grid/result model, a pluggable cell
//! executor, and the figure-level scans built on [`sims`].

mod figures;
mod grid;
pub mod sims;

pub use figures::{
    aux_population_maxima, fidelity_vs_chi_error, infidelity_surface, pulse_area_map, region_label, sc_robustness_curves,
    two_qubit_param_search, ErrorKind,
};
pub use grid::{run_sweep, CellExecutor, MaskedCell, Sequential, Stat, SweepAxis, SweepGrid, SweepResult, DEFAULT_BUDGET};
