use alloc::string::String;
use alloc::vec::Vec;

use super::basis::Subspace;
use crate::qcore::CMatrix;
use crate::{Error, Result, C64};

/// One Lindblad channel `κ/2 (2LρL† − L†Lρ − ρL†L)`.
///
/// `loss` holds `L†L` separately so that restriction to an invariant
/// subspace keeps the exact `P L†L P` rather than `(PLP)†(PLP)`.
#[derive(Clone, Debug)]
pub struct Channel {
    pub label: String,
    pub jump: CMatrix,
    pub loss: CMatrix,
    pub rate: f64,
}

impl Channel {
    pub fn new(label: impl Into<String>, op: CMatrix, rate: f64) -> Result<Self> {
        if !op.is_square() {
            return Err(Error::NotSquare { rows: op.rows(), cols: op.cols() });
        }
        if !(rate >= 0.0) || !rate.is_finite() {
            return Err(Error::NegativeRate(rate));
        }
        let loss = &op.dagger() * &op;
        Ok(Channel { label: label.into(), jump: op, loss, rate })
    }

    pub fn dim(&self) -> usize {
        self.jump.rows()
    }

    pub fn restrict(&self, sub: &Subspace) -> Result<Channel> {
        Ok(Channel {
            label: self.label.clone(),
            jump: sub.restrict(&self.jump)?,
            loss: sub.restrict(&self.loss)?,
            rate: self.rate,
        })
    }

    /// `Some(c)` if the jump is `c·I` to 1e-14.
    pub fn jump_scalar(&self) -> Option<C64> {
        let n = self.dim();
        let c = self.jump[(0, 0)];
        let tol = 1e-14 * self.jump.max_abs().max(1.0);
        (&self.jump - &CMatrix::identity(n).scale(c)).max_abs().le(&tol).then_some(c)
    }

    /// The channel has no effect on the dynamics.
    pub fn is_inert(&self) -> bool {
        if self.rate == 0.0 {
            return true;
        }
        match self.jump_scalar() {
            Some(c) => {
                let n = self.dim();
                let tol = 1e-14 * self.loss.max_abs().max(1.0);
                (&self.loss - &CMatrix::identity(n).scale_re(c.norm_sqr())).max_abs() <= tol
            }
            None => false,
        }
    }

    /// Only the anti-Hermitian loss term survives (no jumps inside the space).
    pub fn is_loss_only(&self) -> bool {
        self.jump.max_abs() == 0.0
    }
}

/// Collapse operators with rates.
#[derive(Clone, Debug, Default)]
pub struct NoiseModel {
    pub channels: Vec<Channel>,
}

impl NoiseModel {
    pub fn new(channels: Vec<Channel>) -> Result<Self> {
        if let Some(first) = channels.first() {
            let d = first.dim();
            if channels.iter().any(|c| c.dim() != d) {
                return Err(Error::Dimension("channels of different dimension".into()));
            }
        }
        for c in &channels {
            if !(c.rate >= 0.0) {
                return Err(Error::NegativeRate(c.rate));
            }
        }
        Ok(NoiseModel { channels })
    }

    pub fn none() -> Self {
        NoiseModel { channels: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.channels.iter().all(|c| c.is_inert())
    }

    pub fn restrict(&self, sub: &Subspace) -> Result<NoiseModel> {
        Ok(NoiseModel { channels: self.channels.iter().map(|c| c.restrict(sub)).collect::<Result<_>>()? })
    }

    /// Multiply every rate by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<NoiseModel> {
        if !(factor >= 0.0) {
            return Err(Error::NegativeRate(factor));
        }
        let mut m = self.clone();
        for c in &mut m.channels {
            c.rate *= factor;
        }
        Ok(m)
    }
}
