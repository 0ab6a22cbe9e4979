//! Gate and path specifications, the three-segment pulse recipe on the
//! longitude–latitude path, and the closed-form phase laws.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
#[allow(unused_imports)]
use num_traits::Float;

use crate::qcore::{pauli, CMatrix};
use crate::{Error, Result, C64};

/// Half-width of the excluded band around χ = π/2 for η and Δξ.
pub const CHI_GUARD: f64 = 1e-6;

/// Target rotation `exp(iγ/2) exp(−iγ/2 n·σ)` with
/// `n = (−sinθ cosφ, −sinθ sinφ, cosθ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GateSpec {
    pub theta: f64,
    pub phi: f64,
    pub gamma: f64,
}

impl GateSpec {
    pub fn new(theta: f64, phi: f64, gamma: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::param("theta", alloc::format!("{theta} outside [0, π]")));
        }
        if !phi.is_finite() {
            return Err(Error::param("phi", "not finite"));
        }
        if !gamma.is_finite() {
            return Err(Error::param("gamma", "not finite"));
        }
        Ok(GateSpec { theta, phi, gamma })
    }

    pub fn rx(gamma: f64) -> Self {
        GateSpec { theta: FRAC_PI_2, phi: PI, gamma }
    }

    pub fn ry(gamma: f64) -> Self {
        GateSpec { theta: FRAC_PI_2, phi: -FRAC_PI_2, gamma }
    }

    pub fn rz(gamma: f64) -> Self {
        GateSpec { theta: 0.0, phi: 0.0, gamma }
    }

    pub fn axis(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [-st * cp, -st * sp, ct]
    }

    /// The state `|μ⟩ = sin(θ/2)|0⟩ + cos(θ/2)e^{iφ}|1⟩` that picks up `e^{iγ}`.
    pub fn bright_state(&self) -> [C64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [C64::new(s, 0.0), C64::from_polar(c, self.phi)]
    }
}

/// Longitude–latitude path `A(0,ξ₁) → B(χ,ξ₁) → C(χ,ξ₂) → A(0,ξ₂)`.
/// `xi2 = None` lets [`synthesize`] derive it from γ.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PathSpec {
    pub chi: f64,
    pub xi1: f64,
    pub xi2: Option<f64>,
}

impl PathSpec {
    pub fn new(chi: f64) -> Self {
        PathSpec { chi, xi1: 0.0, xi2: None }
    }

    pub fn with_xi1(mut self, xi1: f64) -> Self {
        self.xi1 = xi1;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.chi > 0.0 && self.chi <= PI * (1.0 + 1e-12)) {
            return Err(Error::InvalidPath(alloc::format!("χ = {} outside (0, π]", self.chi)));
        }
        if !self.xi1.is_finite() || self.xi2.is_some_and(|x| !x.is_finite()) {
            return Err(Error::InvalidPath("ξ must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EnvelopeKind {
    /// `Ω_m sin²(πt/τ)` over the whole gate.
    Sin2,
    /// Constant `Ω_m`.
    Flat,
}

/// Piecewise drive produced by [`synthesize`]. Times in the caller's unit,
/// `omega_max` in radians per that unit.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PulseSchedule {
    pub tau: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub omega_max: f64,
    pub envelope_kind: EnvelopeKind,
    pub chi: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub theta: f64,
    pub phi: f64,
    pub gamma: f64,
}

/// One row of [`PulseSchedule::sample`].
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PulseSample {
    pub t: f64,
    pub omega: f64,
    pub phase0: f64,
    pub phase1: f64,
}

impl PulseSchedule {
    pub fn gate(&self) -> GateSpec {
        GateSpec { theta: self.theta, phi: self.phi, gamma: self.gamma }
    }

    /// `Ω(t)`; zero outside `[0, τ]`.
    pub fn omega(&self, t: f64) -> f64 {
        if !(0.0..=self.tau).contains(&t) {
            return 0.0;
        }
        match self.envelope_kind {
            EnvelopeKind::Flat => self.omega_max,
            EnvelopeKind::Sin2 => {
                let s = (PI * t / self.tau).sin();
                self.omega_max * s * s
            }
        }
    }

    /// `∫₀ᵗ Ω`, clamped to `[0, τ]`.
    pub fn cumulative_area(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, self.tau);
        match self.envelope_kind {
            EnvelopeKind::Flat => self.omega_max * t,
            EnvelopeKind::Sin2 => {
                self.omega_max * (t / 2.0 - self.tau * (2.0 * PI * t / self.tau).sin() / (4.0 * PI))
            }
        }
    }

    pub fn total_area(&self) -> f64 {
        self.cumulative_area(self.tau)
    }

    /// `S = ∫Ω/2`.
    pub fn pulse_area(&self) -> f64 {
        0.5 * self.total_area()
    }

    /// Areas of the three segments.
    pub fn segment_areas(&self) -> [f64; 3] {
        let a1 = self.cumulative_area(self.tau1);
        let a2 = self.cumulative_area(self.tau2);
        [a1, a2 - a1, self.total_area() - a2]
    }

    pub fn segment2_area(&self) -> f64 {
        2.0 * self.gamma.abs() * cot_half(self.chi)
    }

    /// `φ₀(t)`.
    pub fn phase0(&self, t: f64) -> f64 {
        self.phase0_on(self.segment(t), t)
    }

    /// `φ₀` of segment `seg` (0, 1, 2) continued to any `t`; integrators use
    /// this to stay on one branch up to a segment's closing boundary.
    pub fn phase0_on(&self, seg: usize, t: f64) -> f64 {
        match seg {
            0 => self.xi1 + FRAC_PI_2,
            1 => {
                let along = self.cumulative_area(t) - self.chi;
                if self.gamma > 0.0 {
                    PI + self.xi1 + cot(self.chi) * along
                } else {
                    self.xi1 - cot(self.chi) * along
                }
            }
            _ => self.xi2 - FRAC_PI_2,
        }
    }

    /// `φ₁(t) = φ₀(t) − φ`.
    pub fn phase1(&self, t: f64) -> f64 {
        self.phase0(t) - self.phi
    }

    pub fn detuning(&self, _t: f64) -> f64 {
        0.0
    }

    /// Segment index (0, 1, 2) that `t` falls in.
    pub fn segment(&self, t: f64) -> usize {
        if t < self.tau1 {
            0
        } else if t < self.tau2 {
            1
        } else {
            2
        }
    }

    /// Azimuth ξ(t) of the designed path.
    pub fn designed_xi(&self, t: f64) -> f64 {
        match self.segment(t) {
            0 => self.xi1,
            1 => {
                if self.gamma > 0.0 {
                    self.phase0(t) - PI
                } else {
                    self.phase0(t)
                }
            }
            _ => self.xi2,
        }
    }

    /// `n + 1` uniformly spaced rows on `[0, τ]`.
    pub fn sample(&self, n: usize) -> Vec<PulseSample> {
        let n = n.max(1);
        (0..=n)
            .map(|k| {
                let t = self.tau * k as f64 / n as f64;
                PulseSample { t, omega: self.omega(t), phase0: self.phase0(t), phase1: self.phase1(t) }
            })
            .collect()
    }

    /// Gate duration for a given envelope, peak and total area.
    pub fn duration_for(kind: EnvelopeKind, omega_max: f64, area: f64) -> f64 {
        match kind {
            EnvelopeKind::Sin2 => 2.0 * area / omega_max,
            EnvelopeKind::Flat => area / omega_max,
        }
    }

    /// Time at which the cumulative area reaches `area`.
    fn time_at_area(&self, area: f64) -> f64 {
        if area <= 0.0 {
            return 0.0;
        }
        let total = self.total_area();
        if area >= total {
            return self.tau;
        }
        if self.envelope_kind == EnvelopeKind::Flat {
            return area / self.omega_max;
        }
        let (mut lo, mut hi) = (0.0, self.tau);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.cumulative_area(mid) < area {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * self.tau {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

/// `cot(χ/2)`, exactly zero at χ = π.
fn cot_half(chi: f64) -> f64 {
    if chi >= PI {
        0.0
    } else {
        cot(chi / 2.0)
    }
}

fn check_chi(chi: f64) -> Result<()> {
    if !(chi > 0.0 && chi <= PI * (1.0 + 1e-12)) {
        return Err(Error::InvalidPath(alloc::format!("χ = {chi} outside (0, π]")));
    }
    if (chi - FRAC_PI_2).abs() <= CHI_GUARD {
        return Err(Error::ChiSingular { chi });
    }
    Ok(())
}

/// `η(χ) = −(1 + sec χ)`.
pub fn eta_of_chi(chi: f64) -> Result<f64> {
    check_chi(chi)?;
    Ok(-(1.0 + 1.0 / chi.cos()))
}

/// `Δξ = ξ₂ − ξ₁ = 2γ/(sec χ − 1)`.
pub fn solve_xi_span(gamma: f64, chi: f64) -> Result<f64> {
    check_chi(chi)?;
    Ok(2.0 * gamma / (1.0 / chi.cos() - 1.0))
}

/// `(γ_g, γ_d)` for the latitude path; `γ_d = η γ_g` and `γ_g + γ_d = γ`.
pub fn closed_form_phases(gamma: f64, chi: f64) -> Result<(f64, f64)> {
    let dxi = solve_xi_span(gamma, chi)?;
    let c = chi.cos();
    let s = chi.sin();
    Ok((-0.5 * dxi * (1.0 - c), 0.5 * dxi * s * s / c))
}

/// `exp(iγ/2) exp(−iγ/2 n·σ)`.
pub fn target_unitary(gate: &GateSpec) -> CMatrix {
    let [nx, ny, nz] = gate.axis();
    let ns = &(&pauli::x().scale_re(nx) + &pauli::y().scale_re(ny)) + &pauli::z().scale_re(nz);
    let (s, c) = (gate.gamma / 2.0).sin_cos();
    // exp(−iγ/2 n·σ) = cos(γ/2) I − i sin(γ/2) n·σ
    let rot = &CMatrix::identity(2).scale_re(c) - &ns.scale(C64::new(0.0, s));
    rot.scale(C64::from_polar(1.0, gate.gamma / 2.0))
}

/// Build the three-segment schedule for `gate` on `path`.
///
/// Segment areas are `χ`, `2|γ|cot(χ/2)` and `χ`; the boundaries are the
/// times at which the cumulative area crosses `χ` and `χ + 2|γ|cot(χ/2)`.
/// An explicit `path.xi2` must agree with the derived one modulo 2π.
pub fn synthesize(
    gate: &GateSpec,
    path: &PathSpec,
    omega_max: f64,
    envelope_kind: EnvelopeKind,
) -> Result<PulseSchedule> {
    let gate = GateSpec::new(gate.theta, gate.phi, gate.gamma)?;
    path.validate()?;
    if !(omega_max > 0.0 && omega_max.is_finite()) {
        return Err(Error::param("omega_max", alloc::format!("{omega_max} must be positive")));
    }
    let chi = path.chi.min(PI);
    if chi < 1e-6 {
        return Err(Error::InvalidPath(alloc::format!("χ = {chi} is degenerate")));
    }
    let a2 = 2.0 * gate.gamma.abs() * cot_half(chi);
    let total = 2.0 * chi + a2;
    if !total.is_finite() {
        return Err(Error::InvalidPath("segment-2 area overflows".into()));
    }
    let cos_chi = chi.cos();
    let xi2_derived = path.xi1 + 2.0 * gate.gamma * cos_chi / (1.0 - cos_chi);
    let xi2 = match path.xi2 {
        None => xi2_derived,
        Some(x) => {
            if crate::num::angle_distance(x, xi2_derived) > 1e-9 {
                return Err(Error::InvalidPath(alloc::format!(
                    "ξ₂ = {x} inconsistent with γ (expected {xi2_derived} mod 2π)"
                )));
            }
            x
        }
    };
    let tau = PulseSchedule::duration_for(envelope_kind, omega_max, total);
    let mut s = PulseSchedule {
        tau,
        tau1: 0.0,
        tau2: 0.0,
        omega_max,
        envelope_kind,
        chi,
        xi1: path.xi1,
        xi2,
        theta: gate.theta,
        phi: gate.phi,
        gamma: gate.gamma,
    };
    s.tau1 = s.time_at_area(chi);
    s.tau2 = if a2 > 0.0 { s.time_at_area(chi + a2) } else { s.tau1 };
    Ok(s)
}
