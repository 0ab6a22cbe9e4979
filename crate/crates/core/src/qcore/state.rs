use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::linalg::eigh;
use super::matrix::CMatrix;
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StateKind {
    Vector,
    Density,
}

/// A pure state (column vector) or density matrix with a labeled basis.
#[derive(Clone, Debug)]
pub struct QuantumState {
    kind: StateKind,
    data: CMatrix,
    labels: Vec<String>,
}

const STATE_TOL: f64 = 1e-9;

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|k| alloc::format!("|{k}⟩")).collect()
}

impl QuantumState {
    /// Normalized state vector. Fails if `‖ψ‖ ≠ 1` beyond 1e-9.
    pub fn vector(amps: &[C64], labels: Option<Vec<String>>) -> Result<Self> {
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if amps.is_empty() || (norm2 - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(alloc::format!("vector norm² = {norm2}")));
        }
        let labels = check_labels(labels, amps.len())?;
        Ok(QuantumState { kind: StateKind::Vector, data: CMatrix::column(amps), labels })
    }

    /// Normalizes the input first; fails only on a zero vector.
    pub fn normalized(amps: &[C64], labels: Option<Vec<String>>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".to_string()));
        }
        let v: Vec<C64> = amps.iter().map(|a| a / norm).collect();
        Self::vector(&v, labels)
    }

    /// Basis state `|k⟩`.
    pub fn basis(n: usize, k: usize, labels: Option<Vec<String>>) -> Result<Self> {
        if k >= n {
            return Err(Error::Dimension(alloc::format!("basis index {k} in dimension {n}")));
        }
        let mut v = alloc::vec![C64::new(0.0, 0.0); n];
        v[k] = C64::new(1.0, 0.0);
        Self::vector(&v, labels)
    }

    /// Density matrix; checks Hermiticity, unit trace and positivity.
    pub fn density(rho: CMatrix, labels: Option<Vec<String>>) -> Result<Self> {
        if !rho.is_square() {
            return Err(Error::NotSquare { rows: rho.rows(), cols: rho.cols() });
        }
        let defect = rho.hermitian_defect();
        if defect > STATE_TOL {
            return Err(Error::InvalidState(alloc::format!("density not Hermitian ({defect:e})")));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(alloc::format!("trace = {tr}")));
        }
        let min_eig = eigh(&rho)?.values[0];
        if min_eig < -STATE_TOL {
            return Err(Error::InvalidState(alloc::format!("negative eigenvalue {min_eig:e}")));
        }
        let labels = check_labels(labels, rho.rows())?;
        Ok(QuantumState { kind: StateKind::Density, data: rho, labels })
    }

    /// Wraps a density matrix produced by an integrator without checks.
    pub(crate) fn density_unchecked(rho: CMatrix, labels: Vec<String>) -> Self {
        QuantumState { kind: StateKind::Density, data: rho, labels }
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.data.rows()
    }

    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        self.labels = check_labels(Some(labels), self.dim())?;
        Ok(self)
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `|ψ⟩⟨ψ|` for vectors, a copy otherwise.
    pub fn to_density_matrix(&self) -> CMatrix {
        match self.kind {
            StateKind::Vector => &self.data * &self.data.dagger(),
            StateKind::Density => self.data.clone(),
        }
    }

    pub fn to_density(&self) -> QuantumState {
        QuantumState { kind: StateKind::Density, data: self.to_density_matrix(), labels: self.labels.clone() }
    }

    /// `⟨k|ρ|k⟩` (or `|ψ_k|²`).
    pub fn population(&self, k: usize) -> f64 {
        match self.kind {
            StateKind::Vector => self.data[(k, 0)].norm_sqr(),
            StateKind::Density => self.data[(k, k)].re,
        }
    }

    pub fn trace(&self) -> f64 {
        match self.kind {
            StateKind::Vector => self.data.data().iter().map(|a| a.norm_sqr()).sum(),
            StateKind::Density => self.data.trace().re,
        }
    }
}

fn check_labels(labels: Option<Vec<String>>, n: usize) -> Result<Vec<String>> {
    match labels {
        None => Ok(default_labels(n)),
        Some(l) if l.len() == n => Ok(l),
        Some(l) => Err(Error::Dimension(alloc::format!("{} labels for dimension {n}", l.len()))),
    }
}

/// `|⟨a|b⟩|²` for vector `b`, `⟨a|ρ_b|a⟩` for density `b`.
pub fn overlap_fidelity(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    if a.kind != StateKind::Vector {
        return Err(Error::InvalidState("first argument must be a state vector".to_string()));
    }
    if a.dim() != b.dim() {
        return Err(Error::Dimension(alloc::format!("dimensions {} and {}", a.dim(), b.dim())));
    }
    let v = match b.kind {
        StateKind::Vector => a.data.inner(&b.data).norm_sqr(),
        StateKind::Density => a.data.inner(&(&b.data * &a.data)).re,
    };
    Ok(v.clamp(0.0, 1.0))
}

/// `1 − |Tr(u†v)|/d`; zero iff `u = e^{iφ} v` for unitary arguments.
pub fn unitary_distance_upto_phase(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    if !u.is_square() || u.shape() != v.shape() {
        return Err(Error::Dimension(alloc::format!(
            "{}x{} versus {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    let d = u.rows();
    let mut tr = C64::new(0.0, 0.0);
    for r in 0..d {
        for k in 0..d {
            tr += u[(k, r)].conj() * v[(k, r)];
        }
    }
    Ok((1.0 - tr.norm() / d as f64).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::c;

    #[test]
    fn rejects_unnormalized() {
        assert!(QuantumState::vector(&[c(1.0, 0.0), c(1.0, 0.0)], None).is_err());
    }

    #[test]
    fn density_rejects_negative() {
        let rho = CMatrix::from_real_diag(&[1.5, -0.5]);
        assert!(QuantumState::density(rho, None).is_err());
    }

    #[test]
    fn overlap_basic() {
        let z0 = QuantumState::basis(2, 0, None).unwrap();
        let z1 = QuantumState::basis(2, 1, None).unwrap();
        assert_eq!(overlap_fidelity(&z0, &z0).unwrap(), 1.0);
        assert_eq!(overlap_fidelity(&z0, &z1).unwrap(), 0.0);
        let plus = QuantumState::normalized(&[c(1.0, 0.0), c(1.0, 0.0)], None).unwrap();
        let mixed = QuantumState::density(CMatrix::from_real_diag(&[0.5, 0.5]), None).unwrap();
        assert!((overlap_fidelity(&plus, &mixed).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn overlap_dimension_mismatch() {
        let a = QuantumState::basis(2, 0, None).unwrap();
        let b = QuantumState::basis(3, 0, None).unwrap();
        assert!(matches!(overlap_fidelity(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn label_lookup() {
        let s = QuantumState::basis(3, 2, Some(alloc::vec!["a".into(), "b".into(), "c".into()])).unwrap();
        assert_eq!(s.label_index("c").unwrap(), 2);
        assert!(matches!(s.label_index("z"), Err(Error::UnknownLabel(_))));
    }
}
