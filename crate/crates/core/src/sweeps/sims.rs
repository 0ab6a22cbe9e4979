//! Per-cell simulations with the default parameter sets of the three
//! physical settings: the bare Λ-system, the single DFS logical qubit and
//! the two-logical-qubit CP gate.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::dynamics::{evolve_operators, propagate_lindblad, LindbladOptions, TimeGrid, Trajectory};
use crate::metrics::{single_qubit_gate_fidelity, state_fidelity, two_qubit_gate_fidelity, ChannelImages};
use crate::models::{
    lambda_collapse_ops, LambdaModel, NoiseModel, ScConfig, ScErrors, SingleLogicalQubit, TwoLogicalQubit,
    TwoQubitMode, TwoQubitParams, LAMBDA_LABELS, MHZ,
};
use crate::pathsynth::{synthesize, target_unitary, EnvelopeKind, GateSpec, PathSpec, PulseSchedule};
use crate::qcore::{CMatrix, QuantumState};
use crate::{Error, Result, C64};

fn record_every(steps: usize, samples: usize) -> usize {
    (steps / samples.max(1)).max(1)
}

/// Λ-system with a sin² envelope and `κ₋ = κ_z = κ_scale · Ω_m / 2000`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LambdaSim {
    pub omega_max: f64,
    pub kappa_scale: f64,
    pub steps: usize,
    pub n_inputs: usize,
}

impl Default for LambdaSim {
    fn default() -> Self {
        LambdaSim { omega_max: 1.0, kappa_scale: 1.0, steps: 4000, n_inputs: 1000 }
    }
}

impl LambdaSim {
    pub fn schedule(&self, gate: &GateSpec, chi: f64) -> Result<PulseSchedule> {
        synthesize(gate, &PathSpec::new(chi), self.omega_max, EnvelopeKind::Sin2)
    }

    pub fn noise(&self) -> Result<NoiseModel> {
        lambda_collapse_ops(self.omega_max)?.scaled(self.kappa_scale)
    }

    pub fn channel(&self, gate: &GateSpec, chi: f64, delta: f64, eps: f64) -> Result<ChannelImages> {
        let s = self.schedule(gate, chi)?;
        let grid = TimeGrid::over(&s, self.steps)?;
        let model = LambdaModel::new(s).with_errors(delta, eps);
        let noise = self.noise()?;
        ChannelImages::from_batch(3, &[0, 1], |ops| {
            evolve_operators(|t| model.hamiltonian(t), &noise, ops, &grid, &LindbladOptions::default())
        })
    }

    /// Equatorial-average gate fidelity under systematic errors `δ`, `ε`.
    pub fn fidelity(&self, gate: &GateSpec, chi: f64, delta: f64, eps: f64) -> Result<f64> {
        let ch = self.channel(gate, chi, delta, eps)?;
        Ok(single_qubit_gate_fidelity(&ch, &target_unitary(gate), self.n_inputs)?.value)
    }

    /// `ρ(t)` from the bright state `|μ⟩`, about `samples` records.
    pub fn populations(&self, gate: &GateSpec, chi: f64, samples: usize) -> Result<Trajectory> {
        let s = self.schedule(gate, chi)?;
        let grid = TimeGrid::over(&s, self.steps)?;
        let model = LambdaModel::new(s);
        let mu = gate.bright_state();
        let labels = LAMBDA_LABELS.iter().map(|l| String::from(*l)).collect();
        let psi = QuantumState::vector(&[mu[0], mu[1], C64::new(0.0, 0.0)], Some(labels))?;
        let opts = LindbladOptions { record_every: record_every(self.steps, samples), ..Default::default() };
        propagate_lindblad(|t| model.hamiltonian(t), &self.noise()?, &psi, &grid, &opts)
    }

    /// `max_t P_a(t)` on the recorded trajectory.
    pub fn max_aux_population(&self, gate: &GateSpec, chi: f64) -> Result<f64> {
        let traj = self.populations(gate, chi, self.steps)?;
        Ok(traj.states.iter().map(|s| s.population(2)).fold(0.0, f64::max))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ScMode {
    /// Parametrically driven chain with `e^{iF(t)}` kept exactly.
    Full,
    /// First-order Bessel Λ-Hamiltonian.
    Effective,
}

/// Single DFS logical qubit with collective decay and dephasing.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScSim {
    pub g: f64,
    pub beta: f64,
    pub delta: f64,
    pub kappa: f64,
    pub full_steps: usize,
    pub effective_steps: usize,
    pub n_inputs: usize,
}

impl Default for ScSim {
    fn default() -> Self {
        ScSim {
            g: 10.0 * MHZ,
            beta: 1.7,
            delta: 390.0 * MHZ,
            kappa: 0.003 * MHZ,
            full_steps: 40_000,
            effective_steps: 4000,
            n_inputs: 1000,
        }
    }
}

impl ScSim {
    pub fn qubit(&self, config: ScConfig) -> Result<SingleLogicalQubit> {
        SingleLogicalQubit::new(self.g, self.beta, self.delta, config)
    }

    /// Gate channel on the logical qubit. Systematic errors enter as the
    /// error Hamiltonians of the sector in either mode.
    pub fn channel(&self, gate: &GateSpec, chi: f64, config: ScConfig, mode: ScMode, errors: &ScErrors) -> Result<ChannelImages> {
        let q = self.qubit(config)?;
        let s = q.schedule(gate, &PathSpec::new(chi))?;
        let noise = q.noise(self.kappa, self.kappa)?;
        let emb = SingleLogicalQubit::embedding();
        let opts = LindbladOptions::default();
        match mode {
            ScMode::Full => {
                let chain = q.chain(&s)?;
                let grid = TimeGrid::over(&s, self.full_steps)?;
                let h = |t: f64| &chain.hamiltonian(t) + &q.error_hamiltonian(&s, errors, t);
                ChannelImages::from_batch(3, &emb, |ops| evolve_operators(h, &noise, ops, &grid, &opts))
            }
            ScMode::Effective => {
                let betas = q.arm_betas(gate.theta)?;
                let grid = TimeGrid::over(&s, self.effective_steps)?;
                let h = |t: f64| {
                    &crate::models::sc_effective_hamiltonian(&s, q.g, betas, t) + &q.error_hamiltonian(&s, errors, t)
                };
                ChannelImages::from_batch(3, &emb, |ops| evolve_operators(h, &noise, ops, &grid, &opts))
            }
        }
    }

    pub fn fidelity(&self, gate: &GateSpec, chi: f64, config: ScConfig, mode: ScMode, errors: &ScErrors) -> Result<f64> {
        let ch = self.channel(gate, chi, config, mode, errors)?;
        Ok(single_qubit_gate_fidelity(&ch, &target_unitary(gate), self.n_inputs)?.value)
    }
}

/// CP(γ) between two DFS logical qubits through the T₂–T₃ sideband.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TwoQubitSim {
    pub params: TwoQubitParams,
    pub mode: TwoQubitMode,
    pub kappa: f64,
    pub chi: f64,
    pub gamma: f64,
    pub steps: usize,
    pub n_inputs: usize,
}

impl Default for TwoQubitSim {
    fn default() -> Self {
        TwoQubitSim {
            params: TwoQubitParams {
                g23: 8.0 * MHZ,
                beta3: 2.0,
                alpha2: 300.0 * MHZ,
                alpha3: 330.0 * MHZ,
                delta3: 700.0 * MHZ,
            },
            mode: TwoQubitMode::Full,
            kappa: 0.003 * MHZ,
            chi: 0.25 * PI,
            gamma: PI / 4.0,
            steps: 20_000,
            n_inputs: 100,
        }
    }
}

impl TwoQubitSim {
    pub fn with_point(mut self, beta3: f64, delta3: f64) -> Self {
        self.params.beta3 = beta3;
        self.params.delta3 = delta3;
        self
    }

    pub fn system(&self) -> Result<(TwoLogicalQubit, PulseSchedule)> {
        let sys = TwoLogicalQubit::new(self.params, self.mode)?;
        if !(self.params.omega_prime().abs() > 0.0) {
            return Err(Error::param("beta3", "no sideband coupling (J₁(β₃) = 0)"));
        }
        let s = sys.schedule(self.gamma, &PathSpec::new(self.chi))?;
        Ok((sys, s))
    }

    pub fn channel(&self) -> Result<ChannelImages> {
        let (sys, s) = self.system()?;
        let noise = sys.noise(self.kappa, self.kappa)?;
        let grid = TimeGrid::over(&s, self.steps)?;
        ChannelImages::from_batch(sys.dim(), &sys.embedding(), |ops| {
            evolve_operators(|t| sys.hamiltonian(&s, t), &noise, ops, &grid, &LindbladOptions::default())
        })
    }

    /// Two-qubit equatorial-average fidelity against the logical CP target.
    pub fn gate_fidelity(&self) -> Result<f64> {
        let ch = self.channel()?;
        Ok(two_qubit_gate_fidelity(&ch, &TwoLogicalQubit::logical_target(self.gamma), self.n_inputs)?.value)
    }

    /// Input `(|01⟩₂₃ + |11⟩₂₃)/√2` and its ideal image, in the sector basis.
    pub fn state_pair(&self, sys: &TwoLogicalQubit) -> Result<(Vec<C64>, Vec<C64>)> {
        let n = sys.dim();
        let a = sys.index_of(&[1, 0, 1, 0])?;
        let b = sys.index_of(&[0, 1, 1, 0])?;
        let mut psi = alloc::vec![C64::new(0.0, 0.0); n];
        psi[a] = C64::new(FRAC_1_SQRT_2, 0.0);
        psi[b] = C64::new(FRAC_1_SQRT_2, 0.0);
        let mut target = psi.clone();
        target[b] *= C64::from_polar(1.0, self.gamma);
        Ok((psi, target))
    }

    /// Population trajectory from the state of [`Self::state_pair`] and the
    /// final state fidelity.
    pub fn state_run(&self, samples: usize) -> Result<(Trajectory, f64)> {
        let (sys, s) = self.system()?;
        let (psi, target) = self.state_pair(&sys)?;
        let psi = QuantumState::vector(&psi, Some(sys.labels()))?;
        let opts = LindbladOptions { record_every: record_every(self.steps, samples), ..Default::default() };
        let traj = propagate_lindblad(
            |t| sys.hamiltonian(&s, t),
            &sys.noise(self.kappa, self.kappa)?,
            &psi,
            &TimeGrid::over(&s, self.steps)?,
            &opts,
        )?;
        let rho: &CMatrix = traj.final_state().data();
        let f = state_fidelity(&target, rho)?.value;
        Ok((traj, f))
    }
}
