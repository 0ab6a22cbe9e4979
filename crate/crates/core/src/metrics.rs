//! Gate and state fidelities on the real equatorial input family
//! `cos θ|0⟩ + sin θ|1⟩` (and its two-qubit product), averaged on uniform
//! periodic grids.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::dynamics::Trajectory;
use crate::num::{pairwise_mean, periodic_grid};
use crate::qcore::CMatrix;
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FidelityDefinition {
    SingleQubitAvg,
    TwoQubitAvg,
    State,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FidelityReport {
    pub value: f64,
    pub n_samples: usize,
    pub definition: FidelityDefinition,
}

/// A linear map on operators of the physical space together with the
/// positions of the logical basis states in it.
///
/// Stores the logical block `P Φ(|a⟩⟨b|) P` for `a ≤ b`; that is all a
/// fidelity against logical target states needs.
#[derive(Clone, Debug)]
pub struct ChannelImages {
    logical_dim: usize,
    blocks: Vec<CMatrix>,
}

impl ChannelImages {
    /// `evolve` receives the operators `|e_a⟩⟨e_b|` (`a ≤ b`, physical
    /// embedding) in one batch and returns their images.
    pub fn from_batch(
        physical_dim: usize,
        embedding: &[usize],
        evolve: impl FnOnce(&[CMatrix]) -> Result<Vec<CMatrix>>,
    ) -> Result<Self> {
        let d = embedding.len();
        if d == 0 || embedding.iter().any(|&i| i >= physical_dim) {
            return Err(Error::Dimension("embedding outside the physical space".into()));
        }
        let mut inputs = Vec::with_capacity(d * (d + 1) / 2);
        for a in 0..d {
            for b in a..d {
                inputs.push(CMatrix::unit(physical_dim, embedding[a], embedding[b]));
            }
        }
        let images = evolve(&inputs)?;
        if images.len() != inputs.len() || images.iter().any(|m| m.shape() != (physical_dim, physical_dim)) {
            return Err(Error::Dimension("channel returned images of the wrong shape".into()));
        }
        let blocks = images.iter().map(|m| m.submatrix(embedding, embedding)).collect();
        Ok(ChannelImages { logical_dim: d, blocks })
    }

    /// Noiseless unitary on the physical space.
    pub fn from_unitary(u: &CMatrix, embedding: &[usize]) -> Result<Self> {
        Self::from_batch(u.rows(), embedding, |ops| Ok(ops.iter().map(|o| &(u * o) * &u.dagger()).collect()))
    }

    pub fn logical_dim(&self) -> usize {
        self.logical_dim
    }

    fn slot(&self, a: usize, b: usize) -> usize {
        let d = self.logical_dim;
        a * d - a * (a + 1) / 2 + b
    }

    /// `⟨f|Φ(|x⟩⟨x|)|f⟩` for real input `x` and logical output `f`.
    pub fn overlap(&self, x: &[f64], f: &[C64]) -> f64 {
        let d = self.logical_dim;
        let mut total = 0.0;
        for a in 0..d {
            if x[a] == 0.0 {
                continue;
            }
            for b in a..d {
                if x[b] == 0.0 {
                    continue;
                }
                let m = &self.blocks[self.slot(a, b)];
                let mut e = C64::new(0.0, 0.0);
                for r in 0..d {
                    let mut row = C64::new(0.0, 0.0);
                    for c in 0..d {
                        row += m[(r, c)] * f[c];
                    }
                    e += f[r].conj() * row;
                }
                // Φ(|b⟩⟨a|) = Φ(|a⟩⟨b|)†
                let w = x[a] * x[b];
                total += if a == b { w * e.re } else { 2.0 * w * e.re };
            }
        }
        total
    }
}

fn apply(target: &CMatrix, x: &[f64]) -> Vec<C64> {
    let d = target.rows();
    (0..d).map(|r| (0..d).map(|c| target[(r, c)] * x[c]).fold(C64::new(0.0, 0.0), |a, b| a + b)).collect()
}

fn clamp_unit(v: f64) -> f64 {
    if v > 1.0 && v < 1.0 + 1e-9 {
        1.0
    } else if v < 0.0 && v > -1e-9 {
        0.0
    } else {
        v
    }
}

/// `F = (1/2π)∫⟨ψ_f|ρ(τ)|ψ_f⟩dθ₁` on `n` uniform points of `[0, 2π)`.
pub fn single_qubit_gate_fidelity(channel: &ChannelImages, target: &CMatrix, n: usize) -> Result<FidelityReport> {
    if target.shape() != (2, 2) || channel.logical_dim() != 2 {
        return Err(Error::Dimension("single-qubit fidelity needs a 2x2 target and a qubit channel".into()));
    }
    if n == 0 {
        return Err(Error::param("n", "must be positive"));
    }
    let vals: Vec<f64> = periodic_grid(n)
        .into_iter()
        .map(|th| {
            let x = [th.cos(), th.sin()];
            channel.overlap(&x, &apply(target, &x))
        })
        .collect();
    Ok(FidelityReport {
        value: clamp_unit(pairwise_mean(&vals)),
        n_samples: n,
        definition: FidelityDefinition::SingleQubitAvg,
    })
}

/// `F₂ = (1/4π²)∬⟨ψ_f|ρ(τ)|ψ_f⟩dθ₁dθ₂` on an `n × n` grid of product inputs.
pub fn two_qubit_gate_fidelity(channel: &ChannelImages, target: &CMatrix, n: usize) -> Result<FidelityReport> {
    if target.shape() != (4, 4) || channel.logical_dim() != 4 {
        return Err(Error::Dimension("two-qubit fidelity needs a 4x4 target and a two-qubit channel".into()));
    }
    if n == 0 {
        return Err(Error::param("n", "must be positive"));
    }
    let grid = periodic_grid(n);
    let mut vals = Vec::with_capacity(n * n);
    for &t1 in &grid {
        let (s1, c1) = t1.sin_cos();
        for &t2 in &grid {
            let (s2, c2) = t2.sin_cos();
            let x = [c1 * c2, c1 * s2, s1 * c2, s1 * s2];
            vals.push(channel.overlap(&x, &apply(target, &x)));
        }
    }
    Ok(FidelityReport {
        value: clamp_unit(pairwise_mean(&vals)),
        n_samples: n * n,
        definition: FidelityDefinition::TwoQubitAvg,
    })
}

/// Grid average for an arbitrary `evolve: ψ ↦ ρ(τ)` on the physical space;
/// slower than [`single_qubit_gate_fidelity`] but makes no linearity
/// assumption.
pub fn single_qubit_gate_fidelity_with(
    evolve: impl Fn(&[C64]) -> Result<CMatrix>,
    embedding: &[usize; 2],
    physical_dim: usize,
    target: &CMatrix,
    n: usize,
) -> Result<FidelityReport> {
    if target.shape() != (2, 2) {
        return Err(Error::Dimension("target must be 2x2".into()));
    }
    let mut vals = Vec::with_capacity(n);
    for th in periodic_grid(n) {
        let x = [th.cos(), th.sin()];
        let mut psi = alloc::vec![C64::new(0.0, 0.0); physical_dim];
        psi[embedding[0]] = C64::new(x[0], 0.0);
        psi[embedding[1]] = C64::new(x[1], 0.0);
        let rho = evolve(&psi)?;
        let f = apply(target, &x);
        let mut e = C64::new(0.0, 0.0);
        for (r, &ir) in embedding.iter().enumerate() {
            for (c, &ic) in embedding.iter().enumerate() {
                e += f[r].conj() * rho[(ir, ic)] * f[c];
            }
        }
        vals.push(e.re);
    }
    Ok(FidelityReport {
        value: clamp_unit(pairwise_mean(&vals)),
        n_samples: n,
        definition: FidelityDefinition::SingleQubitAvg,
    })
}

/// `⟨ψ_f|ρ|ψ_f⟩`.
pub fn state_fidelity(psi_f: &[C64], rho: &CMatrix) -> Result<FidelityReport> {
    if rho.shape() != (psi_f.len(), psi_f.len()) {
        return Err(Error::Dimension("state and density matrix differ in dimension".into()));
    }
    let v = CMatrix::column(psi_f);
    Ok(FidelityReport {
        value: clamp_unit(v.inner(&(rho * &v)).re),
        n_samples: 1,
        definition: FidelityDefinition::State,
    })
}

/// Populations `⟨l|ρ(t)|l⟩` for each requested label; one series per label.
pub fn population_trace(traj: &Trajectory, labels: &[&str]) -> Result<Vec<Vec<f64>>> {
    let first = traj.states.first().ok_or_else(|| Error::param("traj", "empty trajectory"))?;
    let idx = labels.iter().map(|l| first.label_index(l)).collect::<Result<Vec<_>>>()?;
    Ok(idx.iter().map(|&k| traj.states.iter().map(|s| s.population(k)).collect()).collect())
}
