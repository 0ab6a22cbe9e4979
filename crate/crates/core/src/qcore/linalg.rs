use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::matrix::{mul_into, CMatrix};
use crate::{Error, Result, C64};

/// Eigendecomposition of a Hermitian matrix: `H = V diag(values) V†`,
/// eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigh {
    /// `f(H) = V diag(f(λ)) V†`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> C64) -> CMatrix {
        let n = self.values.len();
        let fl: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        CMatrix::from_fn(n, n, |r, c| {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..n {
                s += v[(r, k)] * fl[k] * v[(c, k)].conj();
            }
            s
        })
    }
}

fn off_norm_sqr(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s
}

/// Cyclic complex Jacobi eigensolver.
pub fn eigh(h: &CMatrix) -> Result<Eigh> {
    if !h.is_square() {
        return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    let defect = h.hermitian_defect();
    if defect > 1e-10 * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let n = h.rows();
    let mut a = h.clone();
    let mut v = CMatrix::identity(n);
    let scale = a.norm_fro().max(f64::MIN_POSITIVE);
    for _sweep in 0..64 {
        if off_norm_sqr(&a).sqrt() <= 1e-16 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * r).atan2(aqq - app);
                let (s, c) = theta.sin_cos();
                let e = apq.conj() / r;
                // G = [[c, s], [-s e, c e]] with e = exp(-i arg a_pq)
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = e * (-s);
                let gqq = e * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(Eigh { values, vectors })
}

/// `exp(-i h dt)` for Hermitian `h`, exactly unitary up to rounding.
pub fn expm_hermitian_step(h: &CMatrix, dt: f64) -> Result<CMatrix> {
    let e = eigh(h)?;
    Ok(e.apply_fn(|l| {
        let (s, c) = (-l * dt).sin_cos();
        C64::new(c, s)
    }))
}

/// Matrix exponential. Anti-Hermitian input goes through [`eigh`];
/// anything else uses a [6/6] Padé approximant with scaling and squaring.
pub fn expm(m: &CMatrix) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.is_anti_hermitian(1e-14) {
        let h = m.scale(C64::new(0.0, 1.0));
        let mut hh = h.clone();
        // symmetrize away rounding so eigh accepts it
        let n = hh.rows();
        for r in 0..n {
            for c in r..n {
                let avg = (h[(r, c)] + h[(c, r)].conj()) * 0.5;
                hh[(r, c)] = avg;
                hh[(c, r)] = avg.conj();
            }
        }
        return expm_hermitian_step(&hh, 1.0);
    }
    expm_pade(m)
}

const PADE6: [f64; 7] = [
    1.0,
    0.5,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
];

fn expm_pade(m: &CMatrix) -> Result<CMatrix> {
    let n = m.rows();
    let norm = m.norm_one();
    if !norm.is_finite() {
        return Err(Error::param("m", "non-finite entries"));
    }
    let mut s = 0u32;
    if norm > 0.5 {
        s = (norm / 0.5).log2().ceil() as u32;
    }
    let x = m.scale_re(1.0 / (2.0f64).powi(s as i32));
    let mut num = CMatrix::identity(n);
    let mut den = CMatrix::identity(n);
    let mut pow = CMatrix::identity(n);
    let mut tmp = CMatrix::zeros(n, n);
    for (k, &ck) in PADE6.iter().enumerate().skip(1) {
        mul_into(&pow, &x, &mut tmp);
        pow.copy_from(&tmp);
        num.add_assign_scaled(&pow, C64::new(ck, 0.0));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        den.add_assign_scaled(&pow, C64::new(sign * ck, 0.0));
    }
    let mut r = solve(&den, &num)?;
    for _ in 0..s {
        mul_into(&r, &r, &mut tmp);
        r.copy_from(&tmp);
    }
    Ok(r)
}

/// Solve `A X = B` by LU with partial pivoting.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != b.rows() {
        return Err(Error::Dimension(alloc::format!(
            "system of size {} with right-hand side of {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.rows();
    let m = b.cols();
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for k in 0..n {
        let mut piv = k;
        let mut best = lu[(k, k)].norm();
        for r in (k + 1)..n {
            let v = lu[(r, k)].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best <= 1e-14 * scale {
            return Err(Error::Singular);
        }
        if piv != k {
            for c in 0..n {
                let t = lu[(k, c)];
                lu[(k, c)] = lu[(piv, c)];
                lu[(piv, c)] = t;
            }
            for c in 0..m {
                let t = x[(k, c)];
                x[(k, c)] = x[(piv, c)];
                x[(piv, c)] = t;
            }
        }
        let d = lu[(k, k)];
        for r in (k + 1)..n {
            let f = lu[(r, k)] / d;
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for c in k..n {
                let t = lu[(k, c)];
                lu[(r, c)] -= f * t;
            }
            for c in 0..m {
                let t = x[(k, c)];
                x[(r, c)] -= f * t;
            }
        }
    }
    for k in (0..n).rev() {
        let d = lu[(k, k)];
        for c in 0..m {
            let mut s = x[(k, c)];
            for j in (k + 1)..n {
                s -= lu[(k, j)] * x[(j, c)];
            }
            x[(k, c)] = s / d;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{c, pauli};
    use core::f64::consts::PI;

    #[test]
    fn eigh_of_pauli_x() {
        let e = eigh(&pauli::x()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        let back = e.apply_fn(|l| c(l, 0.0));
        assert!((&back - &pauli::x()).max_abs() < 1e-14);
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let m = CMatrix::from_rows(2, 2, alloc::vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        assert!(matches!(eigh(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn expm_pauli_rotation() {
        let m = pauli::x().scale(c(0.0, PI / 2.0));
        let e = expm(&m).unwrap();
        let expect = pauli::x().scale(c(0.0, 1.0));
        assert!((&e - &expect).max_abs() < 1e-14);
    }

    #[test]
    fn expm_non_normal_nilpotent() {
        let m = CMatrix::from_rows(2, 2, alloc::vec![c(0., 0.), c(3., 0.), c(0., 0.), c(0., 0.)]);
        let e = expm(&m).unwrap();
        assert!((e[(0, 1)] - c(3.0, 0.0)).norm() < 1e-13);
        assert!((e[(0, 0)] - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn solve_small_system() {
        let a = CMatrix::from_rows(2, 2, alloc::vec![c(0., 0.), c(2., 0.), c(1., 1.), c(0., 0.)]);
        let b = CMatrix::column(&[c(4., 0.), c(2., 0.)]);
        let x = solve(&a, &b).unwrap();
        assert!((&(&a * &x) - &b).max_abs() < 1e-14);
    }

    #[test]
    fn solve_singular() {
        let a = CMatrix::zeros(2, 2);
        assert!(matches!(solve(&a, &CMatrix::identity(2)), Err(Error::Singular)));
    }
}
