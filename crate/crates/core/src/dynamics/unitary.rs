use alloc::vec::Vec;

use super::grid::TimeGrid;
use crate::qcore::{expm_hermitian_step, CMatrix};
use crate::{Error, Result};

/// `U(t1, t0)` as the ordered product of `exp(−i H(t_mid) dt)`.
pub fn propagate_unitary<H: Fn(f64) -> CMatrix>(h: H, grid: &TimeGrid) -> Result<CMatrix> {
    Ok(propagate_unitary_recorded(h, grid, 0)?.0)
}

/// As [`propagate_unitary`], also returning `(t, U(t))` every
/// `record_every` steps (plus both ends) when `record_every > 0`.
pub fn propagate_unitary_recorded<H: Fn(f64) -> CMatrix>(
    h: H,
    grid: &TimeGrid,
    record_every: usize,
) -> Result<(CMatrix, Vec<(f64, CMatrix)>)> {
    let probe = h(grid.midpoint(0));
    if !probe.is_square() {
        return Err(Error::NotSquare { rows: probe.rows(), cols: probe.cols() });
    }
    let n = probe.rows();
    let mut u = CMatrix::identity(n);
    let mut tmp = CMatrix::zeros(n, n);
    let mut rec = Vec::new();
    if record_every > 0 {
        rec.push((grid.t0, u.clone()));
    }
    for k in 0..grid.steps {
        for p in grid.pieces(k) {
            let hk = h(p.a + 0.5 * p.len());
            if hk.shape() != (n, n) {
                return Err(Error::Dimension("Hamiltonian changed shape during propagation".into()));
            }
            let defect = hk.hermitian_defect();
            if defect > 1e-10 * hk.max_abs().max(1.0) {
                return Err(Error::NotHermitian(defect));
            }
            let step = expm_hermitian_step(&hk, p.len())?;
            crate::qcore::mul_into(&step, &u, &mut tmp);
            u.copy_from(&tmp);
        }
        if record_every > 0 && ((k + 1) % record_every == 0 || k + 1 == grid.steps) {
            rec.push((grid.time(k + 1), u.clone()));
        }
    }
    Ok((u, rec))
}
