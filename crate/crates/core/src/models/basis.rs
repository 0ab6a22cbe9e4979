use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::qcore::CMatrix;
use crate::{Error, Result, C64};

/// Tensor product of truncated ladders, site 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductBasis {
    levels: Vec<usize>,
}

impl ProductBasis {
    pub fn new(levels: Vec<usize>) -> Result<Self> {
        if levels.is_empty() || levels.iter().any(|&l| l < 2) {
            return Err(Error::param("levels", "every site needs at least two levels"));
        }
        Ok(ProductBasis { levels })
    }

    pub fn sites(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn dim(&self) -> usize {
        self.levels.iter().product()
    }

    pub fn index(&self, occ: &[usize]) -> Result<usize> {
        if occ.len() != self.levels.len() {
            return Err(Error::Dimension(alloc::format!("{} occupations for {} sites", occ.len(), self.levels.len())));
        }
        let mut idx = 0;
        for (&n, &l) in occ.iter().zip(&self.levels) {
            if n >= l {
                return Err(Error::param("occupation", alloc::format!("{n} exceeds truncation {l}")));
            }
            idx = idx * l + n;
        }
        Ok(idx)
    }

    pub fn occupation(&self, mut idx: usize) -> Vec<usize> {
        let mut occ = alloc::vec![0; self.levels.len()];
        for (k, &l) in self.levels.iter().enumerate().rev() {
            occ[k] = idx % l;
            idx /= l;
        }
        occ
    }

    pub fn label(&self, idx: usize) -> String {
        let mut s = String::from("|");
        for n in self.occupation(idx) {
            s.push_str(&alloc::format!("{n}"));
        }
        s.push('⟩');
        s
    }

    pub fn excitation(&self, idx: usize) -> usize {
        self.occupation(idx).iter().sum()
    }

    /// Single-site operator embedded in the full space.
    pub fn site_operator(&self, site: usize, op: &CMatrix) -> Result<CMatrix> {
        if site >= self.levels.len() || op.shape() != (self.levels[site], self.levels[site]) {
            return Err(Error::Dimension(alloc::format!("operator for site {site}")));
        }
        let mut out = CMatrix::identity(1);
        for (k, &l) in self.levels.iter().enumerate() {
            out = if k == site { out.kron(op) } else { out.kron(&CMatrix::identity(l)) };
        }
        Ok(out)
    }

    /// All states with the given total excitation number, in index order.
    pub fn sector(&self, excitations: usize) -> Subspace {
        let indices = (0..self.dim()).filter(|&i| self.excitation(i) == excitations).collect();
        Subspace::from_indices(self, indices).expect("sector indices are valid")
    }
}

/// Ordered selection of basis states of a [`ProductBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    full_dim: usize,
    indices: Vec<usize>,
    labels: Vec<String>,
}

impl Subspace {
    pub fn from_indices(basis: &ProductBasis, indices: Vec<usize>) -> Result<Self> {
        let n = basis.dim();
        for (k, &i) in indices.iter().enumerate() {
            if i >= n || indices[..k].contains(&i) {
                return Err(Error::param("indices", "out of range or repeated"));
            }
        }
        let labels = indices.iter().map(|&i| basis.label(i)).collect();
        Ok(Subspace { full_dim: n, indices, labels })
    }

    pub fn from_occupations(basis: &ProductBasis, occs: &[&[usize]]) -> Result<Self> {
        let idx = occs.iter().map(|o| basis.index(o)).collect::<Result<Vec<_>>>()?;
        Self::from_indices(basis, idx)
    }

    /// Same subspace with `first` moved to the front in the given order.
    pub fn reordered_front(&self, first: &[usize]) -> Result<Self> {
        let mut idx: Vec<usize> = first.to_vec();
        for &i in &self.indices {
            if !first.contains(&i) {
                idx.push(i);
            }
        }
        if idx.len() != self.indices.len() {
            return Err(Error::param("first", "contains states outside the subspace"));
        }
        let labels = idx
            .iter()
            .map(|i| self.labels[self.indices.iter().position(|j| j == i).unwrap()].clone())
            .collect();
        Ok(Subspace { full_dim: self.full_dim, indices: idx, labels })
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn full_dim(&self) -> usize {
        self.full_dim
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `P M P` as a `dim × dim` matrix.
    pub fn restrict(&self, m: &CMatrix) -> Result<CMatrix> {
        if m.shape() != (self.full_dim, self.full_dim) {
            return Err(Error::Dimension(alloc::format!("restricting a {}x{} operator", m.rows(), m.cols())));
        }
        Ok(m.submatrix(&self.indices, &self.indices))
    }

    /// Embed a subspace column vector into the full space.
    pub fn embed_vector(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim() {
            return Err(Error::Dimension(alloc::format!("{} amplitudes for a {}-dim subspace", v.len(), self.dim())));
        }
        let mut out = alloc::vec![C64::new(0.0, 0.0); self.full_dim];
        for (&i, &a) in self.indices.iter().zip(v) {
            out[i] = a;
        }
        Ok(out)
    }
}

/// Truncated annihilation operator `a|n⟩ = √n |n−1⟩`.
pub fn lowering(levels: usize) -> CMatrix {
    let mut m = CMatrix::zeros(levels, levels);
    for n in 1..levels {
        m[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    m
}

/// `a†a`.
pub fn number(levels: usize) -> CMatrix {
    CMatrix::from_real_diag(&(0..levels).map(|n| n as f64).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let b = ProductBasis::new(alloc::vec![3, 2, 3]).unwrap();
        for i in 0..b.dim() {
            assert_eq!(b.index(&b.occupation(i)).unwrap(), i);
        }
        assert_eq!(b.label(b.index(&[2, 1, 0]).unwrap()), "|210⟩");
    }

    #[test]
    fn sector_sizes() {
        let b = ProductBasis::new(alloc::vec![3; 4]).unwrap();
        assert_eq!(b.sector(2).dim(), 10);
        let b2 = ProductBasis::new(alloc::vec![2; 3]).unwrap();
        assert_eq!(b2.sector(1).dim(), 3);
    }

    #[test]
    fn reorder_keeps_set() {
        let b = ProductBasis::new(alloc::vec![2; 3]).unwrap();
        let s = b.sector(1).reordered_front(&[4, 1]).unwrap();
        assert_eq!(s.indices(), &[4, 1, 2]);
        assert_eq!(s.labels()[0], "|100⟩");
        assert!(b.sector(1).reordered_front(&[0]).is_err());
    }
}
