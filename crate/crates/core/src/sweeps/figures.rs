use alloc::string::{String, ToString};
use core::f64::consts::PI;

use super::grid::{run_sweep, CellExecutor, Stat, SweepAxis, SweepGrid, SweepResult, DEFAULT_BUDGET};
use super::sims::{LambdaSim, ScMode, ScSim, TwoQubitSim};
use crate::models::{ScConfig, ScErrors};
use crate::pathsynth::{synthesize, EnvelopeKind, GateSpec, PathSpec};
use crate::{Error, Result};

const REGION_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ErrorKind {
    Delta,
    Epsilon,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Delta => "delta",
            ErrorKind::Epsilon => "epsilon",
        }
    }
}

fn gate_desc(g: &GateSpec) -> String {
    alloc::format!("theta={} phi={} gamma={}", g.theta, g.phi, g.gamma)
}

/// Region of pulse area `S`: I for `S > 2π`, II for `π < S ≤ 2π`, III
/// for `S ≤ π` (boundaries with a relative slack of 1e-12).
pub fn region_label(s: f64) -> &'static str {
    if s > 2.0 * PI * (1.0 + REGION_SLACK) {
        "I"
    } else if s > PI * (1.0 + REGION_SLACK) {
        "II"
    } else {
        "III"
    }
}

/// `S/π` of the synthesized schedule over `(χ, γ)`, with region labels.
pub fn pulse_area_map(chi_values: &[f64], gamma_values: &[f64], exec: &dyn CellExecutor) -> Result<SweepResult> {
    if chi_values.iter().any(|&c| !(c > 0.0)) {
        return Err(Error::param("chi", "χ = 0 is excluded from the area map"));
    }
    let grid = SweepGrid::new(
        alloc::vec![
            SweepAxis::new("chi", "rad", chi_values.to_vec())?,
            SweepAxis::new("gamma", "rad", gamma_values.to_vec())?,
        ],
        "pulse area S/pi",
        DEFAULT_BUDGET,
    )?;
    let cell = |p: &[f64]| -> Result<f64> {
        let s = synthesize(&GateSpec::new(0.0, 0.0, p[1])?, &PathSpec::new(p[0]), 1.0, EnvelopeKind::Sin2)?;
        Ok(s.pulse_area() / PI)
    };
    let mut r = run_sweep(grid, Stat::AreaOverPi, exec, &cell)?;
    r.labels = Some(r.values.iter().map(|v| region_label(v * PI).to_string()).collect());
    Ok(r)
}

fn check_lambda_errors(values: &[f64]) -> Result<()> {
    if values.iter().any(|v| v.abs() > 0.1 + 1e-12) {
        return Err(Error::param("error_values", "Λ-model errors must lie in [−0.1, 0.1]"));
    }
    Ok(())
}

/// Λ-model fidelity over `(χ, error)` with one kind of systematic error.
pub fn fidelity_vs_chi_error(
    gate: &GateSpec,
    kind: ErrorKind,
    chi_values: &[f64],
    error_values: &[f64],
    sim: &LambdaSim,
    exec: &dyn CellExecutor,
) -> Result<SweepResult> {
    check_lambda_errors(error_values)?;
    let grid = SweepGrid::new(
        alloc::vec![
            SweepAxis::new("chi", "rad", chi_values.to_vec())?,
            SweepAxis::new(kind.as_str(), "1", error_values.to_vec())?,
        ],
        alloc::format!("lambda fidelity {} error={}", gate_desc(gate), kind.as_str()),
        DEFAULT_BUDGET,
    )?;
    let cell = |p: &[f64]| match kind {
        ErrorKind::Delta => sim.fidelity(gate, p[0], p[1], 0.0),
        ErrorKind::Epsilon => sim.fidelity(gate, p[0], 0.0, p[1]),
    };
    run_sweep(grid, Stat::Fidelity, exec, &cell)
}

/// `1 − F` over simultaneous `(δ, ε)` at fixed `χ`.
pub fn infidelity_surface(
    gate: &GateSpec,
    chi: f64,
    delta_values: &[f64],
    eps_values: &[f64],
    sim: &LambdaSim,
    exec: &dyn CellExecutor,
) -> Result<SweepResult> {
    check_lambda_errors(delta_values)?;
    check_lambda_errors(eps_values)?;
    let grid = SweepGrid::new(
        alloc::vec![
            SweepAxis::new("delta", "1", delta_values.to_vec())?,
            SweepAxis::new("epsilon", "1", eps_values.to_vec())?,
        ],
        alloc::format!("lambda infidelity {} chi={chi}", gate_desc(gate)),
        DEFAULT_BUDGET,
    )?;
    let cell = |p: &[f64]| sim.fidelity(gate, chi, p[0], p[1]).map(|f| 1.0 - f);
    run_sweep(grid, Stat::Infidelity, exec, &cell)
}

/// Effective-model fidelity of the logical qubit against one error kind
/// (values in rad/µs) for the optimized path `χ = 0.25π` and single loop
/// `χ = π`; the first axis is `χ`.
pub fn sc_robustness_curves(
    gate: &GateSpec,
    config: ScConfig,
    kind: ErrorKind,
    values: &[f64],
    sim: &ScSim,
    exec: &dyn CellExecutor,
) -> Result<SweepResult> {
    let cfg = match config {
        ScConfig::Cavity => "cavity",
        ScConfig::ThreeTransmon => "3t",
    };
    let grid = SweepGrid::new(
        alloc::vec![
            SweepAxis::new("chi", "rad", alloc::vec![0.25 * PI, PI])?,
            SweepAxis::new(kind.as_str(), "rad/us", values.to_vec())?,
        ],
        alloc::format!("sc effective {} config={cfg} error={}", gate_desc(gate), kind.as_str()),
        DEFAULT_BUDGET,
    )?;
    let cell = |p: &[f64]| {
        let errors = match kind {
            ErrorKind::Delta => ScErrors::uniform(p[1], 0.0),
            ErrorKind::Epsilon => ScErrors::uniform(0.0, p[1]),
        };
        sim.fidelity(gate, p[0], config, ScMode::Effective, &errors)
    };
    run_sweep(grid, Stat::Fidelity, exec, &cell)
}

/// Two-qubit fidelity over `(β₃, Δ₃)` (Δ₃ in rad/µs).
pub fn two_qubit_param_search(
    beta3_values: &[f64],
    delta3_values: &[f64],
    sim: &TwoQubitSim,
    exec: &dyn CellExecutor,
) -> Result<SweepResult> {
    let grid = SweepGrid::new(
        alloc::vec![
            SweepAxis::new("beta3", "1", beta3_values.to_vec())?,
            SweepAxis::new("delta3", "rad/us", delta3_values.to_vec())?,
        ],
        alloc::format!("two-qubit CP gamma={} chi={} mode={:?}", sim.gamma, sim.chi, sim.mode),
        DEFAULT_BUDGET,
    )?;
    let cell = |p: &[f64]| sim.with_point(p[0], p[1]).gate_fidelity();
    run_sweep(grid, Stat::Fidelity, exec, &cell)
}

/// `max_t P_a(t)` from `|μ⟩` over `χ`.
pub fn aux_population_maxima(
    gate: &GateSpec,
    chi_values: &[f64],
    sim: &LambdaSim,
    exec: &dyn CellExecutor,
) -> Result<SweepResult> {
    let grid = SweepGrid::new(
        alloc::vec![SweepAxis::new("chi", "rad", chi_values.to_vec())?],
        alloc::format!("lambda max aux population {}", gate_desc(gate)),
        DEFAULT_BUDGET,
    )?;
    let cell = |p: &[f64]| sim.max_aux_population(gate, p[0]);
    run_sweep(grid, Stat::MaxPopulation, exec, &cell)
}

