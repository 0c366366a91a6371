//! Minimal dense matrix used for conversions and for reference checks.
//!
//! This type is deliberately dumb storage: row-major data with indexing and a
//! couple of norms. All dense arithmetic lives in the separate reference
//! crate so that the structured algorithms here cannot accidentally lean on
//! it.

use num_traits::Zero;
use std::ops::{Index, IndexMut};

use crate::error::{CrossError, Result};
use crate::scalar::{RealScalar, Scalar};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    /// All-zero matrix. Both dimensions must be positive.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dense dimensions must be positive");
        DenseMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Build from row-major data.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(CrossError::ZeroOrder);
        }
        if data.len() != rows * cols {
            return Err(CrossError::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&t| f(t)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> T::Real {
        let mut s = T::Real::zero();
        for &v in &self.data {
            let a = v.abs();
            s += a * a;
        }
        s.sqrt()
    }

    pub fn max_abs(&self) -> T::Real {
        let mut m = T::Real::zero();
        for &v in &self.data {
            m = RealScalar::max(m, v.abs());
        }
        m
    }

    /// Largest |a_ij - b_ij|; the two matrices must have equal shape.
    pub fn max_abs_diff(&self, other: &Self) -> T::Real {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let mut m = T::Real::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            m = RealScalar::max(m, (*a - *b).abs());
        }
        m
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "dense index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "dense index out of range");
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_checks_length() {
        let err = DenseMatrix::from_vec(2, 2, vec![1.0, 2.0, 3.0]).unwrap_err();
        assert_eq!(err, CrossError::DimensionMismatch { expected: 4, got: 3 });
    }

    #[test]
    fn indexing_is_row_major() {
        let m = DenseMatrix::from_vec(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(m[(0, 2)], 3.0);
        assert_eq!(m[(1, 0)], 4.0);
        assert_eq!(m.transpose()[(2, 0)], 3.0);
    }

    #[test]
    fn norms() {
        let m = DenseMatrix::from_vec(2, 2, vec![3.0, 0.0, 0.0, -4.0]).unwrap();
        assert_eq!(m.frobenius_norm(), 5.0);
        assert_eq!(m.max_abs(), 4.0);
    }
}
