//! Packed symmetric matrix storage.
//!
//! Hessians are symmetric, so only the upper triangle is kept:
//! `dim * (dim + 1) / 2` values instead of `dim * dim`.

use serde::{Deserialize, Serialize};

/// Symmetric matrix stored as its upper triangle, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackedSym {
    dim: usize,
    data: Vec<f64>,
}

/// Number of stored entries for a `dim x dim` symmetric matrix.
pub fn packed_len(dim: usize) -> usize {
    dim * (dim + 1) / 2
}

impl PackedSym {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; packed_len(dim)],
        }
    }

    pub fn from_data(dim: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), packed_len(dim));
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        r * (2 * self.dim - r + 1) / 2 + (c - r)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.index(i, j)]
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: f64) {
        let idx = self.index(i, j);
        self.data[idx] += v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Expand to a dense row-major `dim x dim` matrix.
    pub fn to_dense(&self) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for j in i..d {
                let v = self.get(i, j);
                out[i * d + j] = v;
                out[j * d + i] = v;
            }
        }
        out
    }

    pub fn add_assign(&mut self, other: &PackedSym) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &PackedSym) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        let mut m = PackedSym::zeros(3);
        m.add_at(0, 2, 5.0);
        assert_eq!(m.get(0, 2), 5.0);
        assert_eq!(m.get(2, 0), 5.0);
        m.add_at(1, 1, 2.0);
        assert_eq!(m.get(1, 1), 2.0);
    }

    #[test]
    fn dense_expansion_is_symmetric() {
        let mut m = PackedSym::zeros(3);
        m.add_at(0, 1, 1.5);
        m.add_at(2, 2, 4.0);
        let d = m.to_dense();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i * 3 + j], d[j * 3 + i]);
            }
        }
        assert_eq!(d[1], 1.5);
        assert_eq!(d[2 * 3 + 2], 4.0);
    }

    #[test]
    fn trace_sums_diagonal() {
        let mut m = PackedSym::zeros(2);
        m.add_at(0, 0, 1.0);
        m.add_at(1, 1, 2.5);
        m.add_at(0, 1, 9.0);
        assert_eq!(m.trace(), 3.5);
    }
}
