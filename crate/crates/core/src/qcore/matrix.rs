use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, C64};

/// Row-major dense complex matrix. Column vectors are `n × 1` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Panics if `data.len() != rows * cols`; use [`CMatrix::try_from_rows`]
    /// for untrusted input.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        Self::try_from_rows(rows, cols, data).expect("CMatrix::from_rows: length mismatch")
    }

    pub fn try_from_rows(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Dimension(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (k, &d) in diag.iter().enumerate() {
            m.data[k * n + k] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    pub fn column(entries: &[C64]) -> Self {
        CMatrix { rows: entries.len(), cols: 1, data: entries.to_vec() }
    }

    /// Standard basis column `|k⟩` in dimension `n`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        m.data[k] = C64::new(1.0, 0.0);
        m
    }

    /// `|r⟩⟨c|` in dimension `n`.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[r * n + c] = C64::new(1.0, 0.0);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn trace(&self) -> C64 {
        let n = self.rows.min(self.cols);
        (0..n).map(|k| self.data[k * self.cols + k]).fold(C64::new(0.0, 0.0), |a, b| a + b)
    }

    pub fn diag(&self) -> Vec<C64> {
        let n = self.rows.min(self.cols);
        (0..n).map(|k| self.data[k * self.cols + k]).collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.norm()))
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Induced 1-norm (max column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.data[r * self.cols + c].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `max |M - M†|`, or infinity for non-square input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut d: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                d = d.max((self.data[r * n + c] - self.data[c * n + r].conj()).norm());
            }
        }
        d
    }

    /// Hermitian to `tol`, scaled by `max(1, max_abs)`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol * self.max_abs().max(1.0)
    }

    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let scale = self.max_abs().max(1.0);
        for r in 0..n {
            for c in r..n {
                if (self.data[r * n + c] + self.data[c * n + r].conj()).norm() > tol * scale {
                    return false;
                }
            }
        }
        true
    }

    /// `max |U†U - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = &self.dagger() * self;
        (&p - &CMatrix::identity(self.cols)).max_abs()
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = CMatrix::zeros(rows, cols);
        for ra in 0..self.rows {
            for ca in 0..self.cols {
                let a = self.data[ra * self.cols + ca];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for rb in 0..other.rows {
                    for cb in 0..other.cols {
                        let r = ra * other.rows + rb;
                        let c = ca * other.cols + cb;
                        out.data[r * cols + c] = a * other.data[rb * other.cols + cb];
                    }
                }
            }
        }
        out
    }

    /// Checked product.
    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(alloc::format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        mul_into(self, other, &mut out);
        Ok(out)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) - &(other * self)
    }

    /// `⟨a|b⟩` for column vectors.
    pub fn inner(&self, other: &CMatrix) -> C64 {
        debug_assert_eq!(self.cols, 1);
        debug_assert_eq!(other.cols, 1);
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).fold(C64::new(0.0, 0.0), |x, y| x + y)
    }

    /// Principal submatrix on the given indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> CMatrix {
        CMatrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])])
    }

    pub fn add_assign_scaled(&mut self, other: &CMatrix, s: C64) {
        assert_eq!(self.shape(), other.shape());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b * s;
        }
    }

    pub fn fill_zero(&mut self) {
        for x in &mut self.data {
            *x = C64::new(0.0, 0.0);
        }
    }

    pub fn copy_from(&mut self, other: &CMatrix) {
        assert_eq!(self.shape(), other.shape());
        self.data.copy_from_slice(&other.data);
    }
}

/// `out = a · b` without allocating. Panics on shape mismatch.
pub fn mul_into(a: &CMatrix, b: &CMatrix, out: &mut CMatrix) {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    assert_eq!(out.shape(), (a.rows, b.cols));
    let (n, m, p) = (a.rows, a.cols, b.cols);
    out.fill_zero();
    for i in 0..n {
        let orow = &mut out.data[i * p..(i + 1) * p];
        for k in 0..m {
            let aik = a.data[i * m + k];
            if aik.re == 0.0 && aik.im == 0.0 {
                continue;
            }
            let brow = &b.data[k * p..(k + 1) * p];
            for (o, &bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
}

/// `out = a · b†` without allocating.
pub fn mul_adj_into(a: &CMatrix, b: &CMatrix, out: &mut CMatrix) {
    assert_eq!(a.cols, b.cols, "matrix product shape mismatch");
    assert_eq!(out.shape(), (a.rows, b.rows));
    let (n, m, p) = (a.rows, a.cols, b.rows);
    for i in 0..n {
        let arow = &a.data[i * m..(i + 1) * m];
        for j in 0..p {
            let brow = &b.data[j * m..(j + 1) * m];
            let mut s = C64::new(0.0, 0.0);
            for (x, y) in arow.iter().zip(brow) {
                s += *x * y.conj();
            }
            out.data[i * p + j] = s;
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        mul_into(self, rhs, &mut out);
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_re(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{c, pauli};

    #[test]
    fn kron_identity() {
        let i4 = CMatrix::identity(2).kron(&CMatrix::identity(2));
        assert_eq!(i4, CMatrix::identity(4));
    }

    #[test]
    fn kron_sigma_x_with_projector() {
        let p0 = CMatrix::unit(2, 0, 0);
        let k = pauli::x().kron(&p0);
        for r in 0..4 {
            for cc in 0..4 {
                let expect = if (r, cc) == (0, 2) || (r, cc) == (2, 0) { 1.0 } else { 0.0 };
                assert_eq!(k[(r, cc)], c(expect, 0.0));
            }
        }
    }

    #[test]
    fn matmul_rejects_bad_shapes() {
        let a = CMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::Dimension(_))));
    }

    #[test]
    fn dagger_of_sigma_y() {
        assert_eq!(pauli::y().dagger(), pauli::y());
        assert!(pauli::y().is_hermitian(1e-15));
    }

    #[test]
    fn mul_adj_matches_explicit() {
        let a = CMatrix::from_fn(3, 2, |r, k| c(r as f64 + 0.5, k as f64 - 1.0));
        let b = CMatrix::from_fn(4, 2, |r, k| c(k as f64, r as f64 * 0.3));
        let mut out = CMatrix::zeros(3, 4);
        mul_adj_into(&a, &b, &mut out);
        assert!((&out - &(&a * &b.dagger())).max_abs() < 1e-15);
    }
}
