use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::noise::{Channel, NoiseModel};
use crate::pathsynth::PulseSchedule;
use crate::qcore::CMatrix;
use crate::{Error, Result, C64};

pub const LAMBDA_LABELS: [&str; 3] = ["|0⟩", "|1⟩", "|a⟩"];

/// Λ-system driven by a [`PulseSchedule`], with a detuning error
/// `δ·Ω_m|a⟩⟨a|` and a relative Rabi error `ε` on both arms.
#[derive(Clone, Debug)]
pub struct LambdaModel {
    pub schedule: PulseSchedule,
    pub delta_err: f64,
    pub eps_err: f64,
}

impl LambdaModel {
    pub fn new(schedule: PulseSchedule) -> Self {
        LambdaModel { schedule, delta_err: 0.0, eps_err: 0.0 }
    }

    pub fn with_errors(mut self, delta_err: f64, eps_err: f64) -> Self {
        self.delta_err = delta_err;
        self.eps_err = eps_err;
        self
    }

    pub fn labels() -> Vec<String> {
        LAMBDA_LABELS.iter().map(|s| String::from(*s)).collect()
    }

    /// Hamiltonian at `t` without range checking.
    pub fn hamiltonian(&self, t: f64) -> CMatrix {
        let s = &self.schedule;
        let amp = 0.5 * s.omega(t) * (1.0 + self.eps_err);
        let (sh, ch) = (s.theta / 2.0).sin_cos();
        let p0 = s.phase0(t);
        let p1 = p0 - s.phi;
        let h02 = C64::from_polar(amp * sh, -p0);
        let h12 = C64::from_polar(amp * ch, -p1);
        let z = C64::new(0.0, 0.0);
        CMatrix::from_rows(
            3,
            3,
            alloc::vec![
                z,
                z,
                h02,
                z,
                z,
                h12,
                h02.conj(),
                h12.conj(),
                C64::new(s.detuning(t) + self.delta_err * s.omega_max, 0.0),
            ],
        )
    }
}

/// `H(t)` on `{|0⟩, |1⟩, |a⟩}`; `t` must lie in `[0, τ]`.
pub fn lambda_hamiltonian(model: &LambdaModel, t: f64) -> Result<CMatrix> {
    let tau = model.schedule.tau;
    let slack = 1e-12 * tau;
    if !(t >= -slack && t <= tau + slack) {
        return Err(Error::TimeOutOfRange { t, tau });
    }
    Ok(model.hamiltonian(t))
}

/// `σ₋ = |0⟩⟨a| + |1⟩⟨a|` and `σ_z = 2|a⟩⟨a| − |1⟩⟨1| − |0⟩⟨0|`, both at
/// rate `Ω_m/2000`.
pub fn lambda_collapse_ops(omega_max: f64) -> Result<NoiseModel> {
    let kappa = omega_max / 2000.0;
    let mut sm = CMatrix::zeros(3, 3);
    sm[(0, 2)] = C64::new(1.0, 0.0);
    sm[(1, 2)] = C64::new(1.0, 0.0);
    let sz = CMatrix::from_real_diag(&[-1.0, -1.0, 2.0]);
    NoiseModel::new(alloc::vec![Channel::new("sigma_minus", sm, kappa)?, Channel::new("sigma_z", sz, kappa)?])
}
