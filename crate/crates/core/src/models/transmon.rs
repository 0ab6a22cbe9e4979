use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::basis::{lowering, ProductBasis, Subspace};
use super::noise::{Channel, NoiseModel};
use crate::pathsynth::{synthesize, EnvelopeKind, GateSpec, PathSpec, PulseSchedule};
use crate::qcore::CMatrix;
use crate::special::{j1, j1_inverse, J1_ARGMAX};
use crate::{Error, Result, C64};

/// One ladder of the chain. `omega` and `alpha` are in rad/µs and only
/// their differences across sites matter in the interaction picture.
#[derive(Clone, Debug, PartialEq)]
pub struct Site {
    pub label: String,
    pub omega: f64,
    pub alpha: f64,
    pub levels: usize,
}

impl Site {
    pub fn new(label: impl Into<String>, omega: f64, alpha: f64, levels: usize) -> Self {
        Site { label: label.into(), omega, alpha, levels }
    }

    fn energy(&self, n: usize) -> f64 {
        let n = n as f64;
        self.omega * n - 0.5 * self.alpha * n * (n - 1.0)
    }
}

/// Exchange `g (a†b + ab†)` between sites `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    pub a: usize,
    pub b: usize,
    pub g: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arm {
    Zero,
    One,
}

/// Phase `φ(t)` of a parametric drive.
#[derive(Clone, Debug, PartialEq)]
pub enum PhaseProgram {
    Constant(f64),
    /// `sign · φ_arm(t) + offset`, where `φ_arm` is `φ₀` or `φ₁` of the schedule.
    Schedule { schedule: PulseSchedule, arm: Arm, sign: f64, offset: f64 },
}

impl PhaseProgram {
    pub fn at(&self, t: f64) -> f64 {
        match self {
            PhaseProgram::Constant(p) => *p,
            PhaseProgram::Schedule { schedule, arm, sign, offset } => {
                let p = match arm {
                    Arm::Zero => schedule.phase0(t),
                    Arm::One => schedule.phase1(t),
                };
                sign * p + offset
            }
        }
    }
}

/// Flux modulation `F(t) = β sin(νt + φ(t))` on one site.
#[derive(Clone, Debug, PartialEq)]
pub struct DriveSpec {
    pub site: usize,
    pub beta: f64,
    pub nu: f64,
    pub phase: PhaseProgram,
}

impl DriveSpec {
    pub fn modulation(&self, t: f64) -> f64 {
        self.beta * (self.nu * t + self.phase.at(t)).sin()
    }
}

#[derive(Clone, Debug)]
struct Transition {
    i: usize,
    j: usize,
    amp: f64,
    de: f64,
    dn: Vec<(usize, f64)>,
}

/// Transmon/cavity chain in the interaction picture of the bare energies
/// and the flux modulations. Matrix elements are
/// `V_xy exp(i[(E_x − E_y)t + Σ_d F_d(t)(x_d − y_d)])`, evaluated exactly.
#[derive(Clone, Debug)]
pub struct TransmonChainModel {
    sites: Vec<Site>,
    couplings: Vec<Coupling>,
    drives: Vec<DriveSpec>,
    basis: ProductBasis,
    space: Subspace,
    transitions: Vec<Transition>,
}

impl TransmonChainModel {
    /// Model on the full product space.
    pub fn new(sites: Vec<Site>, couplings: Vec<Coupling>, drives: Vec<DriveSpec>) -> Result<Self> {
        let basis = ProductBasis::new(sites.iter().map(|s| s.levels).collect())?;
        let space = Subspace::from_indices(&basis, (0..basis.dim()).collect())?;
        Self::on_space(sites, couplings, drives, basis, space)
    }

    /// Same physics restricted to `space`. Exchange conserves excitation
    /// number, so restricting to a union of sectors is exact.
    pub fn restricted(&self, space: Subspace) -> Result<Self> {
        if space.full_dim() != self.basis.dim() {
            return Err(Error::Dimension("subspace of a different product basis".into()));
        }
        Self::on_space(self.sites.clone(), self.couplings.clone(), self.drives.clone(), self.basis.clone(), space)
    }

    fn on_space(
        sites: Vec<Site>,
        couplings: Vec<Coupling>,
        drives: Vec<DriveSpec>,
        basis: ProductBasis,
        space: Subspace,
    ) -> Result<Self> {
        let n = sites.len();
        for c in &couplings {
            if c.a >= n || c.b >= n || c.a == c.b {
                return Err(Error::param("couplings", alloc::format!("edge ({}, {}) on {n} sites", c.a, c.b)));
            }
        }
        for d in &drives {
            if d.site >= n {
                return Err(Error::param("drives", alloc::format!("site {} on {n} sites", d.site)));
            }
            if !(d.beta >= 0.0) {
                return Err(Error::param("beta", "must be non-negative"));
            }
        }
        let pos = |full: usize| space.indices().iter().position(|&k| k == full);
        let mut transitions = Vec::new();
        for (jy, &y) in space.indices().iter().enumerate() {
            let occ_y = basis.occupation(y);
            for c in &couplings {
                // a_a† a_b |y⟩
                let (na, nb) = (occ_y[c.a], occ_y[c.b]);
                if nb == 0 || na + 1 >= sites[c.a].levels {
                    continue;
                }
                let mut occ_x = occ_y.clone();
                occ_x[c.a] += 1;
                occ_x[c.b] -= 1;
                let x = basis.index(&occ_x)?;
                let Some(ix) = pos(x) else { continue };
                let amp = c.g * ((nb as f64) * (na as f64 + 1.0)).sqrt();
                let energy = |occ: &[usize]| -> f64 { sites.iter().zip(occ).map(|(s, &k)| s.energy(k)).sum() };
                let de = energy(&occ_x) - energy(&occ_y);
                let dn = drives
                    .iter()
                    .enumerate()
                    .filter_map(|(d, spec)| {
                        let diff = occ_x[spec.site] as f64 - occ_y[spec.site] as f64;
                        (diff != 0.0).then_some((d, diff))
                    })
                    .collect();
                transitions.push(Transition { i: ix, j: jy, amp, de, dn });
            }
        }
        Ok(TransmonChainModel { sites, couplings, drives, basis, space, transitions })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &ProductBasis {
        &self.basis
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn labels(&self) -> Vec<String> {
        self.space.labels().to_vec()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn drives(&self) -> &[DriveSpec] {
        &self.drives
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    pub fn hamiltonian(&self, t: f64) -> CMatrix {
        let mut h = CMatrix::zeros(self.dim(), self.dim());
        self.hamiltonian_into(t, &mut h);
        h
    }

    pub fn hamiltonian_into(&self, t: f64, out: &mut CMatrix) {
        out.fill_zero();
        let f: Vec<f64> = self.drives.iter().map(|d| d.modulation(t)).collect();
        for tr in &self.transitions {
            let mut phase = tr.de * t;
            for &(d, k) in &tr.dn {
                phase += f[d] * k;
            }
            let v = C64::from_polar(tr.amp, phase);
            out[(tr.i, tr.j)] += v;
            out[(tr.j, tr.i)] += v.conj();
        }
    }

    /// Total excitation number on the model's space.
    pub fn excitation_operator(&self) -> CMatrix {
        let d: Vec<f64> = self.space.indices().iter().map(|&i| self.basis.excitation(i) as f64).collect();
        CMatrix::from_real_diag(&d)
    }
}

/// Interaction-picture chain Hamiltonian at `t`, with no rotating-wave
/// approximation.
pub fn sc_driven_hamiltonian(model: &TransmonChainModel, t: f64) -> CMatrix {
    model.hamiltonian(t)
}

/// `½[Ω₀ e^{−iφ₀}|0⟩_L⟨a| + Ω₁ e^{−iφ₁}|1⟩_L⟨a|] + H.c.` with
/// `Ω_j = 2gJ₁(β_j)`, on `(|0⟩_L, |1⟩_L, |a⟩)`.
pub fn sc_effective_hamiltonian(schedule: &PulseSchedule, g: f64, betas: [f64; 2], t: f64) -> CMatrix {
    let a0 = g * j1(betas[0]);
    let a1 = g * j1(betas[1]);
    let p0 = schedule.phase0(t);
    let p1 = schedule.phase1(t);
    let mut h = CMatrix::zeros(3, 3);
    h[(0, 2)] = C64::from_polar(a0, -p0);
    h[(1, 2)] = C64::from_polar(a1, -p1);
    h[(2, 0)] = h[(0, 2)].conj();
    h[(2, 1)] = h[(1, 2)].conj();
    h
}

/// Auxiliary element of the single logical qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ScConfig {
    /// Transmon–cavity–transmon.
    Cavity,
    /// Transmon–transmon–transmon.
    #[cfg_attr(feature = "serde", serde(rename = "3t"))]
    ThreeTransmon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseConfig {
    Cavity,
    ThreeTransmon,
    TwoQubit,
}

impl From<ScConfig> for NoiseConfig {
    fn from(c: ScConfig) -> Self {
        match c {
            ScConfig::Cavity => NoiseConfig::Cavity,
            ScConfig::ThreeTransmon => NoiseConfig::ThreeTransmon,
        }
    }
}

/// Systematic errors of the logical qubit, all in rad/µs.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ScErrors {
    pub delta1: f64,
    pub delta2: f64,
    pub eps1: f64,
    pub eps2: f64,
    /// Frequency error of the auxiliary transmon (3T only).
    pub delta_t: f64,
}

impl ScErrors {
    /// `δ₁ = δ₂ = δ`, `ε₁ = ε₂ = ε`, and `δ_t = −δ`.
    pub fn uniform(delta: f64, eps: f64) -> Self {
        ScErrors { delta1: delta, delta2: delta, eps1: eps, eps2: eps, delta_t: -delta }
    }
}

/// `(H^δ, H^ε)` on `(|0⟩_L, |1⟩_L, |a⟩)` for arm phases `(φ₀, φ₁)`.
pub fn sc_error_hamiltonians(errors: &ScErrors, config: ScConfig, phases: (f64, f64)) -> (CMatrix, CMatrix) {
    let aux = match config {
        ScConfig::Cavity => 0.0,
        ScConfig::ThreeTransmon => errors.delta_t,
    };
    let hd = CMatrix::from_real_diag(&[errors.delta1, errors.delta2, aux]);
    let mut he = CMatrix::zeros(3, 3);
    he[(0, 2)] = C64::from_polar(0.5 * errors.eps1, -phases.0);
    he[(1, 2)] = C64::from_polar(0.5 * errors.eps2, -phases.1);
    he[(2, 0)] = he[(0, 2)].conj();
    he[(2, 1)] = he[(1, 2)].conj();
    (hd, he)
}

/// Collapse operators on the full product space:
/// single logical qubit (three two-level sites `1, a, 2`) or two logical
/// qubits (four three-level transmons).
pub fn sc_collapse_ops(config: NoiseConfig, kappa_minus: f64, kappa_z: f64) -> Result<NoiseModel> {
    let (levels, dephased): (Vec<usize>, Vec<usize>) = match config {
        NoiseConfig::Cavity => (alloc::vec![2; 3], alloc::vec![0, 2]),
        NoiseConfig::ThreeTransmon => (alloc::vec![2; 3], alloc::vec![0, 1, 2]),
        NoiseConfig::TwoQubit => (alloc::vec![3; 4], alloc::vec![0, 1, 2, 3]),
    };
    let basis = ProductBasis::new(levels.clone())?;
    let n = basis.dim();
    let mut dm = CMatrix::zeros(n, n);
    let mut dz = CMatrix::zeros(n, n);
    for (site, &l) in levels.iter().enumerate() {
        dm = &dm + &basis.site_operator(site, &lowering(l))?;
    }
    for &site in &dephased {
        let local = match config {
            NoiseConfig::TwoQubit => CMatrix::from_real_diag(&[0.0, 1.0, 2.0]),
            _ => CMatrix::from_real_diag(&[-1.0, 1.0]),
        };
        dz = &dz + &basis.site_operator(site, &local)?;
    }
    NoiseModel::new(alloc::vec![Channel::new("D_minus", dm, kappa_minus)?, Channel::new("D_z", dz, kappa_z)?])
}

/// DFS-encoded single logical qubit: transmon 1, auxiliary, transmon 2,
/// each truncated to two levels and simulated in the single-excitation
/// sector ordered `(|100⟩ = |0⟩_L, |001⟩ = |1⟩_L, |010⟩ = |a⟩)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleLogicalQubit {
    pub g: f64,
    pub beta: f64,
    pub delta: f64,
    pub config: ScConfig,
}

impl SingleLogicalQubit {
    pub fn new(g: f64, beta: f64, delta: f64, config: ScConfig) -> Result<Self> {
        if !(g > 0.0) {
            return Err(Error::param("g", "must be positive"));
        }
        if !(beta > 0.0 && beta <= J1_ARGMAX) {
            return Err(Error::param("beta", alloc::format!("{beta} outside (0, {J1_ARGMAX}]")));
        }
        Ok(SingleLogicalQubit { g, beta, delta, config })
    }

    /// Peak Rabi frequency of the flat envelope for polar angle `θ`: the
    /// stronger arm runs at `β`.
    pub fn omega_max(&self, theta: f64) -> f64 {
        let (s, c) = (theta / 2.0).sin_cos();
        2.0 * self.g * j1(self.beta) / s.max(c)
    }

    /// Bessel arguments of the two arms.
    pub fn arm_betas(&self, theta: f64) -> Result<[f64; 2]> {
        let om = self.omega_max(theta);
        let (s, c) = (theta / 2.0).sin_cos();
        let pick = |w: f64| -> Result<f64> {
            if w >= s.max(c) {
                Ok(self.beta)
            } else {
                j1_inverse(om * w / (2.0 * self.g))
            }
        };
        Ok([pick(s)?, pick(c)?])
    }

    pub fn schedule(&self, gate: &GateSpec, path: &PathSpec) -> Result<PulseSchedule> {
        synthesize(gate, path, self.omega_max(gate.theta), EnvelopeKind::Flat)
    }

    pub fn basis() -> ProductBasis {
        ProductBasis::new(alloc::vec![2; 3]).expect("static basis")
    }

    pub fn sector() -> Subspace {
        let b = Self::basis();
        Subspace::from_occupations(&b, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]).expect("static sector")
    }

    /// Logical states inside the sector.
    pub fn embedding() -> [usize; 2] {
        [0, 1]
    }

    /// The driven chain, restricted to the single-excitation sector.
    pub fn chain(&self, schedule: &PulseSchedule) -> Result<TransmonChainModel> {
        let betas = self.arm_betas(schedule.theta)?;
        let aux = match self.config {
            ScConfig::Cavity => "c",
            ScConfig::ThreeTransmon => "t",
        };
        let sites = alloc::vec![
            Site::new("1", 0.0, 0.0, 2),
            Site::new(aux, self.delta, 0.0, 2),
            Site::new("2", 0.0, 0.0, 2),
        ];
        let couplings = alloc::vec![Coupling { a: 0, b: 1, g: self.g }, Coupling { a: 2, b: 1, g: self.g }];
        let drive = |site, beta, arm| DriveSpec {
            site,
            beta,
            nu: self.delta,
            phase: PhaseProgram::Schedule { schedule: schedule.clone(), arm, sign: -1.0, offset: 0.0 },
        };
        let drives = alloc::vec![drive(0, betas[0], Arm::Zero), drive(2, betas[1], Arm::One)];
        TransmonChainModel::new(sites, couplings, drives)?.restricted(Self::sector())
    }

    pub fn effective_hamiltonian(&self, schedule: &PulseSchedule, t: f64) -> Result<CMatrix> {
        Ok(sc_effective_hamiltonian(schedule, self.g, self.arm_betas(schedule.theta)?, t))
    }

    /// Error terms at `t` in the sector basis.
    pub fn error_hamiltonian(&self, schedule: &PulseSchedule, errors: &ScErrors, t: f64) -> CMatrix {
        let (hd, he) = sc_error_hamiltonians(errors, self.config, (schedule.phase0(t), schedule.phase1(t)));
        &hd + &he
    }

    /// Collapse operators restricted to the sector.
    pub fn noise(&self, kappa_minus: f64, kappa_z: f64) -> Result<NoiseModel> {
        sc_collapse_ops(self.config.into(), kappa_minus, kappa_z)?.restrict(&Self::sector())
    }

    pub fn labels() -> Vec<String> {
        ["|0⟩_L", "|1⟩_L", "|a⟩"].iter().map(|s| String::from(*s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::MHZ;
    use core::f64::consts::PI;

    #[test]
    fn undriven_coupling_entry() {
        let sites = alloc::vec![Site::new("j", 0.0, 0.0, 2), Site::new("a", 0.0, 0.0, 2)];
        let m = TransmonChainModel::new(sites, alloc::vec![Coupling { a: 0, b: 1, g: 3.0 }], alloc::vec![]).unwrap();
        let h = m.hamiltonian(0.0);
        let b = m.basis();
        let x = b.index(&[1, 0]).unwrap();
        let y = b.index(&[0, 1]).unwrap();
        assert_eq!(h[(x, y)], C64::new(3.0, 0.0));
        assert_eq!(h[(y, x)], C64::new(3.0, 0.0));
    }

    #[test]
    fn sector_ordering() {
        let s = SingleLogicalQubit::sector();
        assert_eq!(s.labels(), &["|100⟩", "|001⟩", "|010⟩"]);
    }

    #[test]
    fn three_t_dephasing_is_scalar_in_sector() {
        let q = SingleLogicalQubit::new(10.0 * MHZ, 1.7, 390.0 * MHZ, ScConfig::ThreeTransmon).unwrap();
        let n = q.noise(1.0, 1.0).unwrap();
        assert!(n.channels[1].is_inert());
        assert!(n.channels[0].is_loss_only());
        let c = SingleLogicalQubit { config: ScConfig::Cavity, ..q };
        let n = c.noise(1.0, 1.0).unwrap();
        assert!(!n.channels[1].is_inert());
    }

    #[test]
    fn arm_betas_for_equal_arms() {
        let q = SingleLogicalQubit::new(10.0 * MHZ, 1.7, 390.0 * MHZ, ScConfig::Cavity).unwrap();
        let b = q.arm_betas(PI / 2.0).unwrap();
        assert!((b[0] - 1.7).abs() < 1e-9 && (b[1] - 1.7).abs() < 1e-9);
        let bz = q.arm_betas(0.0).unwrap();
        assert!(bz[0].abs() < 1e-9 && bz[1] == 1.7);
    }
}
