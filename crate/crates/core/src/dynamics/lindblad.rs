use alloc::string::String;
use alloc::vec::Vec;

use super::grid::{TimeGrid, Trajectory};
use crate::models::NoiseModel;
use crate::qcore::{mul_adj_into, mul_into, CMatrix, QuantumState, StateKind};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LindbladOptions {
    /// Store `ρ` every this many steps (0 stores only the ends).
    pub record_every: usize,
    /// Re-run with half the step and fail if the results differ by more
    /// than `halving_tol` (max-abs entrywise).
    pub check_halving: bool,
    pub halving_tol: f64,
}

impl Default for LindbladOptions {
    fn default() -> Self {
        LindbladOptions { record_every: 0, check_halving: false, halving_tol: 1e-5 }
    }
}

/// `ρ̇ = −i(H_eff ρ − ρ H_eff†) + Σ κ J ρ J†` with `H_eff = H − (i/2) Σ κ L†L`.
struct Generator {
    dim: usize,
    gamma: CMatrix,
    jumps: Vec<(f64, CMatrix)>,
}

impl Generator {
    fn new(noise: &NoiseModel, dim: usize) -> Result<Self> {
        let mut gamma = CMatrix::zeros(dim, dim);
        let mut jumps = Vec::new();
        for ch in &noise.channels {
            if ch.rate < 0.0 {
                return Err(Error::NegativeRate(ch.rate));
            }
            if ch.dim() != dim {
                return Err(Error::Dimension(alloc::format!(
                    "channel `{}` is {}-dim, Hamiltonian {}-dim",
                    ch.label,
                    ch.dim(),
                    dim
                )));
            }
            if ch.is_inert() {
                continue;
            }
            gamma.add_assign_scaled(&ch.loss, C64::new(0.5 * ch.rate, 0.0));
            if !ch.is_loss_only() {
                jumps.push((ch.rate, ch.jump.clone()));
            }
        }
        Ok(Generator { dim, gamma, jumps })
    }

    fn h_eff(&self, h: &CMatrix) -> CMatrix {
        let mut m = h.clone();
        m.add_assign_scaled(&self.gamma, C64::new(0.0, -1.0));
        m
    }
}

struct Work {
    a: CMatrix,
    b: CMatrix,
}

impl Work {
    fn new(n: usize) -> Self {
        Work { a: CMatrix::zeros(n, n), b: CMatrix::zeros(n, n) }
    }
}

/// Density-matrix right-hand side.
fn rhs_rho(g: &Generator, heff: &CMatrix, rho: &CMatrix, out: &mut CMatrix, w: &mut Work) {
    mul_into(heff, rho, &mut w.a);
    mul_adj_into(rho, heff, &mut w.b);
    let mi = C64::new(0.0, -1.0);
    for ((o, a), b) in out.data_mut().iter_mut().zip(w.a.data()).zip(w.b.data()) {
        *o = mi * (a - b);
    }
    for (k, j) in &g.jumps {
        mul_into(j, rho, &mut w.a);
        mul_adj_into(&w.a, j, &mut w.b);
        out.add_assign_scaled(&w.b, C64::new(*k, 0.0));
    }
}

/// Propagator right-hand side `V̇ = −i H_eff V`.
fn rhs_v(heff: &CMatrix, v: &CMatrix, out: &mut CMatrix) {
    mul_into(heff, v, out);
    for x in out.data_mut() {
        *x *= C64::new(0.0, -1.0);
    }
}

/// Classical RK4 over `states`, all sharing the generator.
fn rk4<H, F>(h: &H, g: &Generator, states: &mut [CMatrix], grid: &TimeGrid, f: F, mut on_step: impl FnMut(usize, &[CMatrix]))
where
    H: Fn(f64) -> CMatrix,
    F: Fn(&Generator, &CMatrix, &CMatrix, &mut CMatrix, &mut Work),
{
    let n = g.dim;
    let m = states.len();
    let mut ks: Vec<[CMatrix; 4]> = (0..m).map(|_| core::array::from_fn(|_| CMatrix::zeros(n, n))).collect();
    let mut tmp = CMatrix::zeros(n, n);
    let mut w = Work::new(n);
    let mut carry: Option<CMatrix> = None;
    for step in 0..grid.steps {
        for p in grid.pieces(step) {
            let dt = p.len();
            let h_start = match carry.take() {
                Some(hs) if !p.open_a => hs,
                _ => g.h_eff(&h(p.sample(p.a))),
            };
            let h_mid = g.h_eff(&h(p.a + 0.5 * dt));
            let h_end = g.h_eff(&h(p.sample(p.b)));
            for (rho, k) in states.iter_mut().zip(ks.iter_mut()) {
                let [k1, k2, k3, k4] = k;
                f(g, &h_start, rho, k1, &mut w);
                tmp.copy_from(rho);
                tmp.add_assign_scaled(k1, C64::new(0.5 * dt, 0.0));
                f(g, &h_mid, &tmp, k2, &mut w);
                tmp.copy_from(rho);
                tmp.add_assign_scaled(k2, C64::new(0.5 * dt, 0.0));
                f(g, &h_mid, &tmp, k3, &mut w);
                tmp.copy_from(rho);
                tmp.add_assign_scaled(k3, C64::new(dt, 0.0));
                f(g, &h_end, &tmp, k4, &mut w);
                let c1 = dt / 6.0;
                let c2 = dt / 3.0;
                for ((((r, a), b), c), d) in rho
                    .data_mut()
                    .iter_mut()
                    .zip(k1.data())
                    .zip(k2.data())
                    .zip(k3.data())
                    .zip(k4.data())
                {
                    *r += a * c1 + b * c2 + c * c2 + d * c1;
                }
            }
            carry = if p.open_b { None } else { Some(h_end) };
        }
        on_step(step + 1, states);
    }
}

fn check_dims(h0: &CMatrix, ops: &[CMatrix]) -> Result<usize> {
    if !h0.is_square() {
        return Err(Error::NotSquare { rows: h0.rows(), cols: h0.cols() });
    }
    let n = h0.rows();
    for op in ops {
        if op.shape() != (n, n) {
            return Err(Error::Dimension(alloc::format!("{}x{} operator for dimension {n}", op.rows(), op.cols())));
        }
    }
    Ok(n)
}

fn evolve_raw<H: Fn(f64) -> CMatrix>(
    h: &H,
    g: &Generator,
    ops: &[CMatrix],
    grid: &TimeGrid,
    record_every: usize,
) -> (Vec<CMatrix>, Vec<(f64, Vec<CMatrix>)>) {
    let mut rec = Vec::new();
    let want = |k: usize| record_every > 0 && (k % record_every == 0 || k == grid.steps);
    if record_every > 0 {
        rec.push((grid.t0, ops.to_vec()));
    }
    if g.jumps.is_empty() {
        let n = g.dim;
        let mut v = [CMatrix::identity(n)];
        let conj = |v: &CMatrix| -> Vec<CMatrix> { ops.iter().map(|op| &(v * op) * &v.dagger()).collect() };
        rk4(h, g, &mut v, grid, |_, heff, x, out, _| rhs_v(heff, x, out), |k, s| {
            if want(k) {
                rec.push((grid.time(k), conj(&s[0])));
            }
        });
        (conj(&v[0]), rec)
    } else {
        let mut states = ops.to_vec();
        rk4(h, g, &mut states, grid, rhs_rho, |k, s| {
            if want(k) {
                rec.push((grid.time(k), s.to_vec()));
            }
        });
        (states, rec)
    }
}

fn max_diff(a: &[CMatrix], b: &[CMatrix]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).max_abs()).fold(0.0, f64::max)
}

/// Evolve arbitrary operators (not necessarily states) under the
/// master equation; the map is linear, so images of matrix units give
/// the whole channel.
pub fn evolve_operators<H: Fn(f64) -> CMatrix>(
    h: H,
    noise: &NoiseModel,
    ops: &[CMatrix],
    grid: &TimeGrid,
    opts: &LindbladOptions,
) -> Result<Vec<CMatrix>> {
    let n = check_dims(&h(grid.t0), ops)?;
    let g = Generator::new(noise, n)?;
    let (out, _) = evolve_raw(&h, &g, ops, grid, 0);
    if opts.check_halving {
        let (fine, _) = evolve_raw(&h, &g, ops, &grid.refined(2), 0);
        let d = max_diff(&out, &fine);
        if !(d <= opts.halving_tol) {
            return Err(Error::GridTooCoarse(d));
        }
    }
    Ok(out)
}

/// Integrate `ρ̇ = −i[H, ρ] + Σ κ/2 (2LρL† − L†Lρ − ρL†L)` with fixed-step RK4.
pub fn propagate_lindblad<H: Fn(f64) -> CMatrix>(
    h: H,
    noise: &NoiseModel,
    rho0: &QuantumState,
    grid: &TimeGrid,
    opts: &LindbladOptions,
) -> Result<Trajectory> {
    let rho = match rho0.kind() {
        StateKind::Density => rho0.data().clone(),
        StateKind::Vector => rho0.to_density_matrix(),
    };
    let n = check_dims(&h(grid.t0), core::slice::from_ref(&rho))?;
    let g = Generator::new(noise, n)?;
    let ops = [rho];
    let (out, rec) = evolve_raw(&h, &g, &ops, grid, opts.record_every);
    if opts.check_halving {
        let (fine, _) = evolve_raw(&h, &g, &ops, &grid.refined(2), 0);
        let d = max_diff(&out, &fine);
        if !(d <= opts.halving_tol) {
            return Err(Error::GridTooCoarse(d));
        }
    }
    let labels = rho0.labels().to_vec();
    let (times, states) = if rec.is_empty() {
        (
            alloc::vec![grid.t0, grid.t1],
            alloc::vec![
                QuantumState::density_unchecked(ops[0].clone(), labels.clone()),
                QuantumState::density_unchecked(out[0].clone(), labels),
            ],
        )
    } else {
        rec.into_iter()
            .map(|(t, mut s)| (t, QuantumState::density_unchecked(s.swap_remove(0), labels.clone())))
            .unzip()
    };
    Ok(Trajectory { times, states, description: String::from("lindblad-rk4") })
}

/// Max-abs difference between the final `ρ` on `grid` and on the grid
/// with half the step.
pub fn step_halving_discrepancy<H: Fn(f64) -> CMatrix>(
    h: H,
    noise: &NoiseModel,
    rho0: &CMatrix,
    grid: &TimeGrid,
) -> Result<f64> {
    let n = check_dims(&h(grid.t0), core::slice::from_ref(rho0))?;
    let g = Generator::new(noise, n)?;
    let ops = [rho0.clone()];
    let (a, _) = evolve_raw(&h, &g, &ops, grid, 0);
    let (b, _) = evolve_raw(&h, &g, &ops, &grid.refined(2), 0);
    Ok(max_diff(&a, &b))
}
