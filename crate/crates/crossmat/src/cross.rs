//! The core cross-matrix type: `2n` stored entries, O(n) ring arithmetic.

use num_traits::Zero;
use crate::block::Block2;
use crate::dense::DenseMatrix;
use crate::error::{CrossError, Result};
use crate::scalar::{RealScalar, Scalar};

/// A square matrix whose only nonzero entries sit on the main diagonal and
/// the anti-diagonal.
///
/// Storage is two vectors of length `n`: `diag[i]` holds the entry at
/// `(i, i)` and `anti[i]` the entry at `(i, n-1-i)`. For odd `n` the two
/// diagonals share the center entry, which is stored in both vectors and must
/// agree.
///
/// Sums, products, scalar multiples, transposes and (when they exist)
/// inverses of cross matrices are again cross matrices, so the whole API
/// stays within this type and runs in O(n) time.
///
/// # Examples
///
/// ```
/// use crossmat::CrossMatrix;
///
/// let x = CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).unwrap();
/// assert_eq!(x.order(), 3);
/// assert_eq!(x.get(0, 2), 4.0);
/// assert_eq!(x.get(0, 1), 0.0);
/// let y = x.mul(&x).unwrap();
/// assert_eq!(y.get(0, 0), 1.0 * 1.0 + 4.0 * 5.0);
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct CrossMatrix<T> {
    n: usize,
    diag: Vec<T>,
    anti: Vec<T>,
}

impl<T: Scalar> CrossMatrix<T> {
    /// Build from the two stored diagonals. `diag[i]` is the entry at
    /// `(i, i)`, `anti[i]` the entry at `(i, n-1-i)`.
    ///
    /// Fails with [`CrossError::ZeroOrder`] for empty input, with
    /// [`CrossError::DimensionMismatch`] when the vectors disagree in length,
    /// and with [`CrossError::CenterConflict`] when `n` is odd and the two
    /// copies of the center entry differ.
    pub fn new(diag: Vec<T>, anti: Vec<T>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(CrossError::ZeroOrder);
        }
        if anti.len() != n {
            return Err(CrossError::DimensionMismatch {
                expected: n,
                got: anti.len(),
            });
        }
        if n % 2 == 1 {
            let c = n / 2;
            if diag[c] != anti[c] {
                return Err(CrossError::CenterConflict);
            }
        }
        Ok(CrossMatrix { n, diag, anti })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "matrix order must be at least 1");
        let mut anti = vec![T::zero(); n];
        if n % 2 == 1 {
            anti[n / 2] = T::one();
        }
        CrossMatrix {
            n,
            diag: vec![T::one(); n],
            anti,
        }
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix order must be at least 1");
        CrossMatrix {
            n,
            diag: vec![T::zero(); n],
            anti: vec![T::zero(); n],
        }
    }

    /// The exchange matrix: ones on the anti-diagonal.
    pub fn exchange(n: usize) -> Self {
        assert!(n > 0, "matrix order must be at least 1");
        let mut diag = vec![T::zero(); n];
        if n % 2 == 1 {
            diag[n / 2] = T::one();
        }
        CrossMatrix {
            n,
            diag,
            anti: vec![T::one(); n],
        }
    }

    /// Diagonal cross matrix with the given main diagonal.
    pub fn from_diag(entries: &[T]) -> Self {
        assert!(!entries.is_empty(), "matrix order must be at least 1");
        let n = entries.len();
        let mut anti = vec![T::zero(); n];
        if n % 2 == 1 {
            anti[n / 2] = entries[n / 2];
        }
        CrossMatrix {
            n,
            diag: entries.to_vec(),
            anti,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn anti(&self) -> &[T] {
        &self.anti
    }

    /// Number of symmetric index pairs, `n / 2`.
    pub fn num_pairs(&self) -> usize {
        self.n / 2
    }

    /// Center entry for odd order, `None` for even order.
    pub fn center(&self) -> Option<T> {
        if self.n % 2 == 1 {
            Some(self.diag[self.n / 2])
        } else {
            None
        }
    }

    /// Entry at `(i, j)`; zero anywhere off the cross.
    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i < self.n && j < self.n, "index out of range");
        if i == j {
            self.diag[i]
        } else if j == self.n - 1 - i {
            self.anti[i]
        } else {
            T::zero()
        }
    }

    /// The 2x2 block of pair `p` (0-based, `p < n / 2`):
    /// rows and columns `p` and `n-1-p`, i.e.
    /// `[[diag[p], anti[p]], [anti[n-1-p], diag[n-1-p]]]`.
    pub fn pair_block(&self, p: usize) -> Result<Block2<T>> {
        if p >= self.n / 2 {
            return Err(CrossError::IndexOutOfRange {
                index: p,
                bound: self.n / 2,
            });
        }
        let q = self.n - 1 - p;
        Ok(Block2::new(self.diag[p], self.anti[p], self.anti[q], self.diag[q]))
    }

    /// The pair quantity `alpha` of pair `p`: the determinant of its 2x2
    /// block.
    pub fn pair_alpha(&self, p: usize) -> Result<T> {
        Ok(self.pair_block(p)?.det())
    }

    /// Overwrite pair `p` with the entries of a 2x2 block (inverse of
    /// [`CrossMatrix::pair_block`]).
    pub(crate) fn set_pair_block(&mut self, p: usize, b: &Block2<T>) {
        debug_assert!(p < self.n / 2);
        let q = self.n - 1 - p;
        self.diag[p] = b.a;
        self.anti[p] = b.b;
        self.anti[q] = b.c;
        self.diag[q] = b.d;
    }

    pub(crate) fn set_center(&mut self, v: T) {
        debug_assert!(self.n % 2 == 1);
        let c = self.n / 2;
        self.diag[c] = v;
        self.anti[c] = v;
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            m[(i, i)] = self.diag[i];
            m[(i, self.n - 1 - i)] = self.anti[i];
        }
        m
    }

    /// Read a cross matrix out of a dense one.
    ///
    /// Off-cross entries with magnitude at most `tol` are discarded; a larger
    /// off-cross entry fails with [`CrossError::NotCross`] reporting the
    /// worst offender. Pass `tol = 0.0` to require exact structure.
    pub fn from_dense(a: &DenseMatrix<T>, tol: T::Real) -> Result<Self> {
        if !a.is_square() {
            return Err(CrossError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        if n == 0 {
            return Err(CrossError::ZeroOrder);
        }
        let mut worst: Option<(usize, usize, T::Real)> = None;
        for i in 0..n {
            for j in 0..n {
                if i == j || j == n - 1 - i {
                    continue;
                }
                let m = a[(i, j)].abs();
                if m > tol && worst.is_none_or(|(_, _, w)| m > w) {
                    worst = Some((i, j, m));
                }
            }
        }
        if let Some((row, col, m)) = worst {
            return Err(CrossError::NotCross {
                row,
                col,
                magnitude: m.to_f64(),
            });
        }
        let mut diag = Vec::with_capacity(n);
        let mut anti = Vec::with_capacity(n);
        for i in 0..n {
            diag.push(a[(i, i)]);
            anti.push(a[(i, n - 1 - i)]);
        }
        Ok(CrossMatrix { n, diag, anti })
    }

    fn check_same_order(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(CrossError::DimensionMismatch {
                expected: self.n,
                got: rhs.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_order(rhs)?;
        let diag = self.diag.iter().zip(&rhs.diag).map(|(&a, &b)| a + b).collect();
        let anti = self.anti.iter().zip(&rhs.anti).map(|(&a, &b)| a + b).collect();
        Ok(CrossMatrix { n: self.n, diag, anti })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_order(rhs)?;
        let diag = self.diag.iter().zip(&rhs.diag).map(|(&a, &b)| a - b).collect();
        let anti = self.anti.iter().zip(&rhs.anti).map(|(&a, &b)| a - b).collect();
        Ok(CrossMatrix { n: self.n, diag, anti })
    }

    /// Matrix product. Cross structure is closed under multiplication, so
    /// this costs O(n): each pair of the product depends only on the same
    /// pair of both factors.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_order(rhs)?;
        let n = self.n;
        let mut diag = vec![T::zero(); n];
        let mut anti = vec![T::zero(); n];
        for p in 0..n / 2 {
            let q = n - 1 - p;
            diag[p] = self.diag[p] * rhs.diag[p] + self.anti[p] * rhs.anti[q];
            diag[q] = self.anti[q] * rhs.anti[p] + self.diag[q] * rhs.diag[q];
            anti[p] = self.diag[p] * rhs.anti[p] + self.anti[p] * rhs.diag[q];
            anti[q] = self.anti[q] * rhs.diag[p] + self.diag[q] * rhs.anti[q];
        }
        if n % 2 == 1 {
            let c = n / 2;
            let v = self.diag[c] * rhs.diag[c];
            diag[c] = v;
            anti[c] = v;
        }
        Ok(CrossMatrix { n, diag, anti })
    }

    pub fn scale(&self, s: T) -> Self {
        CrossMatrix {
            n: self.n,
            diag: self.diag.iter().map(|&v| v * s).collect(),
            anti: self.anti.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    /// Transpose: the main diagonal is fixed, the anti-diagonal reverses.
    pub fn transpose(&self) -> Self {
        CrossMatrix {
            n: self.n,
            diag: self.diag.clone(),
            anti: self.anti.iter().rev().copied().collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        CrossMatrix {
            n: self.n,
            diag: self.diag.iter().map(|&v| v.conj()).collect(),
            anti: self.anti.iter().rev().map(|&v| v.conj()).collect(),
        }
    }

    /// Entry-wise promotion to the complex scalar type.
    pub fn to_complex(&self) -> CrossMatrix<T::Complex> {
        CrossMatrix {
            n: self.n,
            diag: self.diag.iter().map(|&v| v.to_complex()).collect(),
            anti: self.anti.iter().map(|&v| v.to_complex()).collect(),
        }
    }

    pub fn trace(&self) -> T {
        let mut s = T::zero();
        for &v in &self.diag {
            s += v;
        }
        s
    }

    /// Frobenius norm over the distinct stored entries (the shared center of
    /// an odd-order matrix is counted once).
    pub fn frobenius_norm(&self) -> T::Real {
        let mut s = T::Real::zero();
        for &v in &self.diag {
            s += v.abs() * v.abs();
        }
        for (i, &v) in self.anti.iter().enumerate() {
            if self.n % 2 == 1 && i == self.n / 2 {
                continue;
            }
            s += v.abs() * v.abs();
        }
        s.sqrt()
    }

    pub fn max_abs(&self) -> T::Real {
        let mut m = T::Real::zero();
        for &v in self.diag.iter().chain(&self.anti) {
            m = RealScalar::max(m, v.abs());
        }
        m
    }

    /// Exact Hermitian test: real main diagonal and `anti[p]` conjugate to
    /// `anti[n-1-p]`.
    pub fn is_hermitian(&self) -> bool {
        if self.diag.iter().any(|&v| v != v.conj()) {
            return false;
        }
        (0..self.n).all(|p| self.anti[p] == self.anti[self.n - 1 - p].conj())
    }

    /// Matrix-vector product `X v` in O(n).
    pub fn apply_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.n {
            return Err(CrossError::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let j = n - 1 - i;
            let mut y = self.diag[i] * v[i];
            if j != i {
                y += self.anti[i] * v[j];
            }
            out.push(y);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn x2() -> CrossMatrix<f64> {
        CrossMatrix::new(vec![1.0, 4.0], vec![2.0, 3.0]).unwrap()
    }

    #[test]
    fn new_validates() {
        assert_eq!(CrossMatrix::<f64>::new(vec![], vec![]).unwrap_err(), CrossError::ZeroOrder);
        assert_eq!(
            CrossMatrix::new(vec![1.0, 2.0], vec![3.0]).unwrap_err(),
            CrossError::DimensionMismatch { expected: 2, got: 1 }
        );
        assert_eq!(
            CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 9.0, 5.0]).unwrap_err(),
            CrossError::CenterConflict
        );
        assert!(CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).is_ok());
    }

    #[test]
    fn entry_layout_matches_dense() {
        let x = CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).unwrap();
        let d = x.to_dense();
        assert_eq!(d[(0, 0)], 1.0);
        assert_eq!(d[(0, 2)], 4.0);
        assert_eq!(d[(1, 1)], 2.0);
        assert_eq!(d[(2, 0)], 5.0);
        assert_eq!(d[(2, 2)], 3.0);
        assert_eq!(d[(0, 1)], 0.0);
        assert_eq!(CrossMatrix::from_dense(&d, 0.0).unwrap(), x);
    }

    #[test]
    fn product_matches_full_2x2() {
        // [[1,2],[3,4]] * [[5,6],[7,8]] = [[19,22],[43,50]], all entries on
        // the cross for n = 2.
        let a = x2();
        let b = CrossMatrix::new(vec![5.0, 8.0], vec![6.0, 7.0]).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.diag(), &[19.0, 50.0]);
        assert_eq!(c.anti(), &[22.0, 43.0]);
    }

    #[test]
    fn product_keeps_center_consistent() {
        let a = CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).unwrap();
        let c = a.mul(&a).unwrap();
        assert_eq!(c.center(), Some(4.0));
        assert_eq!(c.diag()[1], c.anti()[1]);
    }

    #[test]
    fn identity_and_exchange() {
        let x = CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).unwrap();
        let i = CrossMatrix::identity(3);
        assert_eq!(x.mul(&i).unwrap(), x);
        assert_eq!(i.mul(&x).unwrap(), x);
        let j = CrossMatrix::exchange(3);
        // Exchange squares to the identity.
        assert_eq!(j.mul(&j).unwrap(), i);
        // Left-multiplying by the exchange reverses the rows.
        let jx = j.mul(&x).unwrap();
        assert_eq!(jx.get(0, 0), x.get(2, 0));
        assert_eq!(jx.get(0, 2), x.get(2, 2));
    }

    #[test]
    fn transpose_reverses_anti() {
        let x = CrossMatrix::new(vec![1.0, 2.0, 3.0, 4.0], vec![5.0, 6.0, 7.0, 8.0]).unwrap();
        let t = x.transpose();
        assert_eq!(t.diag(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(t.anti(), &[8.0, 7.0, 6.0, 5.0]);
        assert_eq!(t.transpose(), x);
        assert_eq!(t.to_dense(), x.to_dense().transpose());
    }

    #[test]
    fn conj_transpose_complex() {
        let x = CrossMatrix::new(
            vec![Complex64::new(1.0, 2.0), Complex64::new(3.0, -4.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(5.0, 0.0)],
        )
        .unwrap();
        let h = x.conj_transpose();
        assert_eq!(h.get(0, 0), Complex64::new(1.0, -2.0));
        assert_eq!(h.get(0, 1), Complex64::new(5.0, 0.0));
        assert_eq!(h.get(1, 0), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn from_dense_reports_worst_offender() {
        let mut d = DenseMatrix::zeros(3, 3);
        d[(0, 0)] = 1.0;
        d[(0, 1)] = 1.0e-14;
        d[(1, 0)] = -2.0e-7;
        let err = CrossMatrix::from_dense(&d, 1.0e-12).unwrap_err();
        assert_eq!(
            err,
            CrossError::NotCross { row: 1, col: 0, magnitude: 2.0e-7 }
        );
        // Below tolerance everything off-cross is discarded.
        let x = CrossMatrix::from_dense(&d, 1.0e-6).unwrap();
        assert_eq!(x.get(0, 1), 0.0);
        assert_eq!(x.get(1, 0), 0.0);
    }

    #[test]
    fn from_dense_rejects_rectangles() {
        let d = DenseMatrix::<f64>::zeros(2, 3);
        assert_eq!(
            CrossMatrix::from_dense(&d, 0.0).unwrap_err(),
            CrossError::NotSquare { rows: 2, cols: 3 }
        );
    }

    #[test]
    fn pair_block_and_alpha() {
        let x = CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).unwrap();
        let b = x.pair_block(0).unwrap();
        assert_eq!(b, Block2::new(1.0, 4.0, 5.0, 3.0));
        assert_eq!(x.pair_alpha(0).unwrap(), 1.0 * 3.0 - 4.0 * 5.0);
        assert_eq!(
            x.pair_block(1).unwrap_err(),
            CrossError::IndexOutOfRange { index: 1, bound: 1 }
        );
    }

    #[test]
    fn matvec() {
        let x = CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).unwrap();
        let y = x.apply_vec(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(y, vec![5.0, 2.0, 8.0]);
        assert!(x.apply_vec(&[1.0]).is_err());
    }

    #[test]
    fn norms_count_center_once() {
        let x = CrossMatrix::new(vec![0.0, 3.0, 0.0], vec![0.0, 3.0, 4.0]).unwrap();
        assert_eq!(x.frobenius_norm(), 5.0);
        assert_eq!(x.max_abs(), 4.0);
    }

    #[test]
    fn hermitian_test() {
        let h = CrossMatrix::new(
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(0.0, 3.0), Complex64::new(0.0, -3.0)],
        )
        .unwrap();
        assert!(h.is_hermitian());
        let nh = CrossMatrix::new(
            vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(0.0, 3.0), Complex64::new(0.0, -3.0)],
        )
        .unwrap();
        assert!(!nh.is_hermitian());
        let s = CrossMatrix::new(vec![1.0, 2.0], vec![3.0, 3.0]).unwrap();
        assert!(s.is_hermitian());
        assert!(!x2().is_hermitian());
    }

    #[test]
    fn arithmetic_identities() {
        let x = CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).unwrap();
        let twice = x.add(&x).unwrap();
        assert_eq!(twice, x.scale(2.0));
        assert_eq!(twice.sub(&x).unwrap(), x);
        assert_eq!(x.neg().add(&x).unwrap(), CrossMatrix::zeros(3));
        let y = CrossMatrix::identity(4);
        assert!(x.add(&y).is_err());
        assert!(x.mul(&y).is_err());
    }
}
