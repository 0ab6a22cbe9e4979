use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::pathsynth::PulseSchedule;
use crate::qcore::CMatrix;
use crate::{Error, Result, C64};

/// Below this `sin χ` the azimuth is pinned.
const POLE_WINDOW: f64 = 1e-4;

/// Samples of `(χ(t), ξ(t))`. Two consecutive samples may share a time
/// where ξ is re-pinned at a pole.
#[derive(Clone, Debug, Default)]
pub struct PathTrajectory {
    pub times: Vec<f64>,
    pub chi: Vec<f64>,
    pub xi: Vec<f64>,
}

impl PathTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn max_chi(&self) -> f64 {
        self.chi.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn push(&mut self, t: f64, chi: f64, xi: f64) {
        self.times.push(t);
        self.chi.push(chi);
        self.xi.push(xi);
    }
}

fn rhs(s: &PulseSchedule, seg: usize, t: f64, chi: f64, xi: f64) -> (f64, f64) {
    let om = s.omega(t);
    let d = s.phase0_on(seg, t) - xi;
    let chi_dot = om * d.sin();
    let xi_dot = if chi.sin().abs() < POLE_WINDOW { 0.0 } else { -s.detuning(t) - om * d.cos() * chi.cos() / chi.sin() };
    (chi_dot, xi_dot)
}

/// Integrate `χ̇ = Ω sin(φ₀ − ξ)`, `ξ̇ = −Δ − Ω cot χ cos(φ₀ − ξ)` with RK4,
/// one segment at a time with `τ₁`, `τ₂` as breakpoints. Near a pole ξ is
/// pinned to the segment's design value.
pub fn path_reconstruct(schedule: &PulseSchedule, steps: usize) -> Result<PathTrajectory> {
    if steps == 0 {
        return Err(Error::param("steps", "must be positive"));
    }
    let s = schedule;
    let bounds = [0.0, s.tau1, s.tau2, s.tau];
    let design_xi = [s.xi1, s.xi1, s.xi2];
    let mut out = PathTrajectory::default();
    let (mut chi, mut xi) = (0.0, s.xi1);
    out.push(0.0, chi, xi);
    for seg in 0..3 {
        let (a, b) = (bounds[seg], bounds[seg + 1]);
        if chi.sin().abs() < POLE_WINDOW && xi != design_xi[seg] {
            xi = design_xi[seg];
            out.push(a, chi, xi);
        }
        if b <= a {
            continue;
        }
        let n = ((steps as f64 * (b - a) / s.tau).round() as usize).max(1);
        let h = (b - a) / n as f64;
        for k in 0..n {
            let t = a + k as f64 * h;
            let (k1c, k1x) = rhs(s, seg, t, chi, xi);
            let (k2c, k2x) = rhs(s, seg, t + 0.5 * h, chi + 0.5 * h * k1c, xi + 0.5 * h * k1x);
            let (k3c, k3x) = rhs(s, seg, t + 0.5 * h, chi + 0.5 * h * k2c, xi + 0.5 * h * k2x);
            let (k4c, k4x) = rhs(s, seg, t + h, chi + h * k3c, xi + h * k3x);
            chi += h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
            xi += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            let tn = if k + 1 == n { b } else { t + h };
            if !chi.is_finite() || !xi.is_finite() {
                return Err(Error::PoleSingularity(tn));
            }
            out.push(tn, chi, xi);
        }
    }
    Ok(out)
}

/// `(A₁₁, K₁₁)` along sampled `(χ, ξ)`: `A₁₁ = −½∫ξ̇(1 − cos χ)` as a
/// Stieltjes sum (so zero-duration jumps at a pole count) and
/// `K₁₁ = −∫⟨ψ₁|H|ψ₁⟩` by the midpoint rule, with
/// `|ψ₁⟩ = cos(χ/2)|μ⟩ + sin(χ/2)e^{iξ}|a⟩` on `(|0⟩, |1⟩, |a⟩)`.
pub fn holonomy_accumulators<H: Fn(f64) -> CMatrix>(
    path: &PathTrajectory,
    mu: &[C64; 2],
    h: H,
) -> Result<(f64, f64)> {
    if path.len() < 2 {
        return Err(Error::param("path", "needs at least two samples"));
    }
    let mut a11 = 0.0;
    let mut k11 = 0.0;
    for k in 0..path.len() - 1 {
        let dt = path.times[k + 1] - path.times[k];
        let dchi = path.chi[k + 1] - path.chi[k];
        let dxi = path.xi[k + 1] - path.xi[k];
        if dt < 0.0 || (dt > 0.0 && (dchi.abs() > 0.5 || dxi.abs() > 0.5)) {
            return Err(Error::DiscontinuousPath(k));
        }
        let chi = 0.5 * (path.chi[k] + path.chi[k + 1]);
        a11 -= 0.5 * dxi * (1.0 - chi.cos());
        if dt > 0.0 {
            let xi = 0.5 * (path.xi[k] + path.xi[k + 1]);
            let (sh, ch) = (chi / 2.0).sin_cos();
            let psi = [mu[0] * ch, mu[1] * ch, C64::from_polar(sh, xi)];
            let hm = h(path.times[k] + 0.5 * dt);
            if hm.shape() != (3, 3) {
                return Err(Error::Dimension("holonomy accumulators need a 3-level Hamiltonian".into()));
            }
            let mut e = C64::new(0.0, 0.0);
            for r in 0..3 {
                for c in 0..3 {
                    e += psi[r].conj() * hm[(r, c)] * psi[c];
                }
            }
            k11 -= e.re * dt;
        }
    }
    Ok((a11, k11))
}
