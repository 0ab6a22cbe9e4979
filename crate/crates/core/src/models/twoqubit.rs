use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};
#[allow(unused_imports)]
use num_traits::Float;

use super::basis::{ProductBasis, Subspace};
use super::noise::NoiseModel;
use super::transmon::{sc_collapse_ops, NoiseConfig};
use crate::pathsynth::{synthesize, EnvelopeKind, GateSpec, PathSpec, PulseSchedule};
use crate::qcore::{CMatrix, QuantumState, StateKind};
use crate::special::j1;
use crate::{Error, Result, C64};

/// Parameters of the T₂–T₃ interaction, all in rad/µs.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TwoQubitParams {
    pub g23: f64,
    pub beta3: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub delta3: f64,
}

impl TwoQubitParams {
    /// `Ω′ = 2√2 g₂₃ J₁(β₃)`.
    pub fn omega_prime(&self) -> f64 {
        2.0 * SQRT_2 * self.g23 * j1(self.beta3)
    }

    /// Modulation frequency resonant with `|11⟩₂₃ ↔ |02⟩₂₃`.
    pub fn nu3(&self) -> f64 {
        self.delta3 - self.alpha3
    }
}

/// Which form of the T₂–T₃ interaction to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TwoQubitMode {
    /// First-order Bessel sideband with all three transitions and their
    /// residual oscillations.
    Full,
    /// Resonant `|11⟩ ↔ |02⟩` term only.
    Effective,
    /// Interaction picture with `exp(−iF₃(t))` kept to all orders.
    Exact,
}

fn idx23(n2: usize, n3: usize) -> usize {
    3 * n2 + n3
}

/// `H₂₃(t)` on T₂ ⊗ T₃ (three levels each, index `3·n₂ + n₃`) for the
/// instantaneous phase `φ₃`.
pub fn two_qubit_hamiltonian(p: &TwoQubitParams, phi3: f64, t: f64, mode: TwoQubitMode) -> CMatrix {
    let mut h = CMatrix::zeros(9, 9);
    let a = (idx23(1, 0), idx23(0, 1));
    let b = (idx23(1, 1), idx23(0, 2));
    let c = (idx23(2, 0), idx23(1, 1));
    let mut terms: Vec<((usize, usize), C64)> = Vec::with_capacity(3);
    match mode {
        TwoQubitMode::Effective | TwoQubitMode::Full => {
            let f = C64::from_polar(p.g23 * j1(p.beta3), phi3);
            terms.push((b, f * SQRT_2));
            if mode == TwoQubitMode::Full {
                terms.push((a, f * C64::from_polar(1.0, -p.alpha3 * t)));
                terms.push((c, f * C64::from_polar(SQRT_2, -(p.alpha2 + p.alpha3) * t)));
            }
        }
        TwoQubitMode::Exact => {
            // T₃ loses one quantum in every transition, so each carries
            // exp(−iF₃) with F₃ = β₃ sin(ν₃t + φ₃ + π).
            let f3 = p.beta3 * (p.nu3() * t + phi3 + PI).sin();
            let base = |amp: f64, w: f64| C64::from_polar(p.g23 * amp, -w * t - f3);
            terms.push((a, base(1.0, p.delta3)));
            terms.push((b, base(SQRT_2, p.delta3 - p.alpha3)));
            terms.push((c, base(SQRT_2, p.delta3 + p.alpha2)));
        }
    }
    for ((i, j), v) in terms {
        h[(i, j)] += v;
        h[(j, i)] += v.conj();
    }
    h
}

/// Decoherence-free encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dfs {
    /// `|0⟩_L = |10⟩₁₂`, `|1⟩_L = |01⟩₁₂`.
    S1,
    /// `|00⟩_L = |1010⟩`, `|01⟩_L = |1001⟩`, `|10⟩_L = |0110⟩`, `|11⟩_L = |0101⟩`.
    S2,
}

impl Dfs {
    fn physical_indices(self) -> (usize, Vec<usize>) {
        match self {
            // two-level sites, site 0 most significant
            Dfs::S1 => (4, alloc::vec![0b10, 0b01]),
            Dfs::S2 => (16, alloc::vec![0b1010, 0b1001, 0b0110, 0b0101]),
        }
    }

    fn sites(self) -> usize {
        match self {
            Dfs::S1 => 2,
            Dfs::S2 => 4,
        }
    }
}

/// Map a logical state into the physical two-level-per-site space.
pub fn dfs_encode(logical: &QuantumState, dfs: Dfs) -> Result<QuantumState> {
    let (n, idx) = dfs.physical_indices();
    if logical.dim() != idx.len() {
        return Err(Error::Dimension(alloc::format!(
            "{}-dim logical state for a {}-dim subspace",
            logical.dim(),
            idx.len()
        )));
    }
    let basis = ProductBasis::new(alloc::vec![2; dfs.sites()])?;
    let labels: Vec<String> = (0..n).map(|i| basis.label(i)).collect();
    match logical.kind() {
        StateKind::Vector => {
            let mut v = alloc::vec![C64::new(0.0, 0.0); n];
            for (k, &i) in idx.iter().enumerate() {
                v[i] = logical.data()[(k, 0)];
            }
            QuantumState::vector(&v, Some(labels))
        }
        StateKind::Density => {
            let src = logical.data();
            let mut rho = CMatrix::zeros(n, n);
            for (r, &ir) in idx.iter().enumerate() {
                for (c, &ic) in idx.iter().enumerate() {
                    rho[(ir, ic)] = src[(r, c)];
                }
            }
            QuantumState::density(rho, Some(labels))
        }
    }
}

/// `diag(1, 1, 1, e^{iγ})`.
pub fn cp_target(gamma: f64) -> CMatrix {
    CMatrix::from_diag(&[
        C64::new(1.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(1.0, 0.0),
        C64::from_polar(1.0, gamma),
    ])
}

/// Two DFS logical qubits (T₁T₂ and T₃T₄, three levels per transmon)
/// coupled through T₂–T₃, simulated in the two-excitation sector with
/// the S₂ states first.
#[derive(Clone, Debug)]
pub struct TwoLogicalQubit {
    pub params: TwoQubitParams,
    pub mode: TwoQubitMode,
    basis: ProductBasis,
    space: Subspace,
    /// (row, col, row₂₃, col₂₃) for every entry that T₂–T₃ operators reach.
    map: Vec<(usize, usize, usize, usize)>,
}

impl TwoLogicalQubit {
    pub fn new(params: TwoQubitParams, mode: TwoQubitMode) -> Result<Self> {
        let basis = ProductBasis::new(alloc::vec![3; 4])?;
        Self::on_space(params, mode, basis.sector(2), basis)
    }

    /// Cross-check variant on every state with at most two excitations,
    /// where the collapse operators act with their jump terms.
    pub fn up_to_two_excitations(params: TwoQubitParams, mode: TwoQubitMode) -> Result<Self> {
        let basis = ProductBasis::new(alloc::vec![3; 4])?;
        let idx = (0..basis.dim()).filter(|&i| basis.excitation(i) <= 2).collect();
        let space = Subspace::from_indices(&basis, idx)?;
        Self::on_space(params, mode, space, basis)
    }

    fn on_space(params: TwoQubitParams, mode: TwoQubitMode, space: Subspace, basis: ProductBasis) -> Result<Self> {
        let front: Vec<usize> =
            [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]].iter().map(|o| basis.index(o)).collect::<Result<_>>()?;
        let space = space.reordered_front(&front)?;
        let mut map = Vec::new();
        for (r, &x) in space.indices().iter().enumerate() {
            let ox = basis.occupation(x);
            for (c, &y) in space.indices().iter().enumerate() {
                let oy = basis.occupation(y);
                if ox[0] == oy[0] && ox[3] == oy[3] {
                    map.push((r, c, idx23(ox[1], ox[2]), idx23(oy[1], oy[2])));
                }
            }
        }
        Ok(TwoLogicalQubit { params, mode, basis, space, map })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn labels(&self) -> Vec<String> {
        self.space.labels().to_vec()
    }

    /// Indices of `|00⟩_L … |11⟩_L`.
    pub fn embedding(&self) -> [usize; 4] {
        [0, 1, 2, 3]
    }

    /// Sector index of a physical occupation pattern.
    pub fn index_of(&self, occ: &[usize]) -> Result<usize> {
        let full = self.basis.index(occ)?;
        self.space
            .indices()
            .iter()
            .position(|&i| i == full)
            .ok_or_else(|| Error::param("occ", "state outside the simulated space"))
    }

    /// The Λ-gate that puts `e^{iγ}` on `|11⟩₂₃` (the `|0⟩` arm is
    /// `|11⟩₂₃`, the auxiliary level is `|02⟩₂₃`).
    pub fn lambda_gate(gamma: f64) -> GateSpec {
        GateSpec { theta: PI, phi: 0.0, gamma }
    }

    pub fn schedule(&self, gamma: f64, path: &PathSpec) -> Result<PulseSchedule> {
        synthesize(&Self::lambda_gate(gamma), path, self.params.omega_prime(), EnvelopeKind::Flat)
    }

    /// `φ₃(t) = −φ₀(t)`.
    pub fn phi3(schedule: &PulseSchedule, t: f64) -> f64 {
        -schedule.phase0(t)
    }

    pub fn hamiltonian(&self, schedule: &PulseSchedule, t: f64) -> CMatrix {
        let h23 = two_qubit_hamiltonian(&self.params, Self::phi3(schedule, t), t, self.mode);
        let n = self.dim();
        let mut h = CMatrix::zeros(n, n);
        for &(r, c, r23, c23) in &self.map {
            h[(r, c)] = h23[(r23, c23)];
        }
        h
    }

    pub fn noise(&self, kappa_minus: f64, kappa_z: f64) -> Result<NoiseModel> {
        sc_collapse_ops(NoiseConfig::TwoQubit, kappa_minus, kappa_z)?.restrict(&self.space)
    }

    /// The gate realized on S₂: the phase lands on T₂ = T₃ = 1, i.e.
    /// `|10⟩_L`, so the logical target is `(I⊗X) CP(γ) (I⊗X)`.
    pub fn logical_target(gamma: f64) -> CMatrix {
        let d = cp_target(gamma).diag();
        CMatrix::from_diag(&[d[1], d[0], d[3], d[2]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::MHZ;

    fn params() -> TwoQubitParams {
        TwoQubitParams { g23: 8.0 * MHZ, beta3: 2.0, alpha2: 300.0 * MHZ, alpha3: 330.0 * MHZ, delta3: 700.0 * MHZ }
    }

    #[test]
    fn effective_single_term() {
        let h = two_qubit_hamiltonian(&params(), 0.0, 0.37, TwoQubitMode::Effective);
        let mut nz = 0;
        for r in 0..9 {
            for c in 0..9 {
                if h[(r, c)].norm() > 0.0 {
                    nz += 1;
                    assert!((r, c) == (4, 2) || (r, c) == (2, 4));
                }
            }
        }
        assert_eq!(nz, 2);
    }

    #[test]
    fn full_weights_at_zero() {
        let p = params();
        let h = two_qubit_hamiltonian(&p, 0.0, 0.0, TwoQubitMode::Full);
        let gj = p.g23 * j1(p.beta3);
        assert!((h[(3, 1)].norm() - gj).abs() < 1e-12);
        assert!((h[(4, 2)].norm() - SQRT_2 * gj).abs() < 1e-12);
        assert!((h[(6, 4)].norm() - SQRT_2 * gj).abs() < 1e-12);
    }

    #[test]
    fn sector_layout() {
        let q = TwoLogicalQubit::new(params(), TwoQubitMode::Full).unwrap();
        assert_eq!(q.dim(), 10);
        assert_eq!(&q.labels()[..4], &["|1010⟩", "|1001⟩", "|0110⟩", "|0101⟩"]);
        let n = q.noise(1.0, 1.0).unwrap();
        assert!(n.channels[0].is_loss_only());
        assert!(n.channels[1].is_inert());
    }

    #[test]
    fn encode_s2() {
        let l = QuantumState::basis(4, 3, None).unwrap();
        let p = dfs_encode(&l, Dfs::S2).unwrap();
        assert_eq!(p.population(0b0101), 1.0);
        assert_eq!(p.labels()[0b0101], "|0101⟩");
        assert!(dfs_encode(&l, Dfs::S1).is_err());
    }
}
