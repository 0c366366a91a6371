//! Multiplicative structure of cross matrices: the rank-two product
//! factorization and the permutation similarity to block-diagonal form.
//!
//! Both forms are the backbone of the rest of the crate: the block-diagonal
//! form reduces every spectral question to independent 2x2 blocks, and the
//! rank-two factorization expresses the matrix as a product of elementary
//! factors, one per symmetric index pair.

use crate::block::Block2;
use crate::cross::CrossMatrix;
use crate::dense::DenseMatrix;
use crate::error::{CrossError, Result};
use crate::scalar::Scalar;

/// Order in which [`RankTwoFactorization::assemble`] multiplies the factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssemblyOrder {
    /// `Y_1 Y_2 ... Y_k` (center factor last for odd order).
    Forward,
    /// `Y_k ... Y_2 Y_1` (center factor first for odd order).
    Reverse,
}

/// Factorization of a cross matrix into `k = n/2` commuting factors, each an
/// identity matrix with one pair block replaced, plus a center factor for odd
/// order.
///
/// Factor `p` differs from the identity only at the four positions of pair
/// `p`, where it carries the source matrix's pair block; each factor has rank
/// at most two off the identity. The factors act on disjoint index pairs, so
/// they commute and the product can be taken in either order.
#[derive(Clone, Debug, PartialEq)]
pub struct RankTwoFactorization<T> {
    n: usize,
    factors: Vec<Block2<T>>,
    center: Option<T>,
}

impl<T: Scalar> RankTwoFactorization<T> {
    /// Build from parts; `factors` must hold exactly `n / 2` blocks and
    /// `center` must be present exactly when `n` is odd.
    pub fn new(n: usize, factors: Vec<Block2<T>>, center: Option<T>) -> Result<Self> {
        if n == 0 {
            return Err(CrossError::ZeroOrder);
        }
        if factors.len() != n / 2 || (center.is_some() != (n % 2 == 1)) {
            return Err(CrossError::MalformedForm);
        }
        Ok(RankTwoFactorization { n, factors, center })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The pair blocks, indexed by pair number `p` in `0..n/2`.
    pub fn factors(&self) -> &[Block2<T>] {
        &self.factors
    }

    pub fn center(&self) -> Option<T> {
        self.center
    }

    /// Materialize factor `p` as a full matrix: the identity with pair `p`
    /// replaced by its block.
    pub fn factor_matrix(&self, p: usize) -> Result<CrossMatrix<T>> {
        if p >= self.factors.len() {
            return Err(CrossError::IndexOutOfRange {
                index: p,
                bound: self.factors.len(),
            });
        }
        let mut y = CrossMatrix::identity(self.n);
        y.set_pair_block(p, &self.factors[p]);
        Ok(y)
    }

    /// The center factor for odd order: the identity with the center entry
    /// replaced.
    pub fn center_factor_matrix(&self) -> Option<CrossMatrix<T>> {
        self.center.map(|c| {
            let mut y = CrossMatrix::identity(self.n);
            y.set_center(c);
            y
        })
    }

    /// Multiply the factors out in the requested order.
    ///
    /// Each factor touches only its own pair, so the accumulator update is a
    /// single 2x2 product and the whole assembly runs in O(n). The two orders
    /// agree because the factors commute; both are provided so that the
    /// commutation is an observable property rather than an assumption.
    pub fn assemble(&self, order: AssemblyOrder) -> CrossMatrix<T> {
        let mut acc = CrossMatrix::identity(self.n);
        let step = |acc: &mut CrossMatrix<T>, p: usize| {
            let cur = acc.pair_block(p).expect("pair index in range");
            acc.set_pair_block(p, &cur.mul(&self.factors[p]));
        };
        match order {
            AssemblyOrder::Forward => {
                for p in 0..self.factors.len() {
                    step(&mut acc, p);
                }
                if let Some(c) = self.center {
                    let cur = acc.center().expect("odd order has a center");
                    acc.set_center(cur * c);
                }
            }
            AssemblyOrder::Reverse => {
                if let Some(c) = self.center {
                    let cur = acc.center().expect("odd order has a center");
                    acc.set_center(c * cur);
                }
                for p in (0..self.factors.len()).rev() {
                    step(&mut acc, p);
                }
            }
        }
        acc
    }
}

/// A permutation of `0..n`, stored as an index map: source position `i` moves
/// to target position `map[i]`.
///
/// As a matrix, `P` has a one at `(map[i], i)`, so conjugation `P A P^T`
/// sends entry `(i, j)` to `(map[i], map[j])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Build from an index map, validating that it is a bijection on `0..n`.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        if map.is_empty() {
            return Err(CrossError::ZeroOrder);
        }
        let n = map.len();
        let mut seen = vec![false; n];
        for &t in &map {
            if t >= n || seen[t] {
                return Err(CrossError::MalformedForm);
            }
            seen[t] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "permutation size must be at least 1");
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// The transposition of positions `i` and `j`.
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n, "swap positions out of range");
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, j);
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Target position of source position `i`.
    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &t) in self.map.iter().enumerate() {
            inv[t] = i;
        }
        Permutation { map: inv }
    }

    /// Composition "self, then other": the result maps `i` to
    /// `other.image(self.image(i))`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.map.len(), other.map.len(), "size mismatch");
        Permutation {
            map: self.map.iter().map(|&t| other.map[t]).collect(),
        }
    }

    /// The permutation as a dense 0/1 matrix with a one at `(map[i], i)`.
    pub fn to_dense<T: Scalar>(&self) -> DenseMatrix<T> {
        let n = self.map.len();
        let mut p = DenseMatrix::zeros(n, n);
        for (i, &t) in self.map.iter().enumerate() {
            p[(t, i)] = T::one();
        }
        p
    }

    /// Conjugation `P A P^T`, applied as exact data movement: entry `(i, j)`
    /// of `a` lands at `(map[i], map[j])`.
    pub fn conjugate<T: Scalar>(&self, a: &DenseMatrix<T>) -> DenseMatrix<T> {
        let n = self.map.len();
        assert!(a.rows() == n && a.cols() == n, "size mismatch");
        let mut out = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(self.map[i], self.map[j])] = a[(i, j)];
            }
        }
        out
    }

    /// Apply to a vector: component `i` lands at `map[i]`.
    pub fn permute_vec<T: Scalar>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.map.len(), "size mismatch");
        let mut out = vec![T::zero(); v.len()];
        for (i, &t) in self.map.iter().enumerate() {
            out[t] = v[i];
        }
        out
    }
}

/// The permutation-similar block-diagonal form of a cross matrix:
/// `P X P^T = diag(B_1..B_m, middle, C_m..C_1)`.
///
/// The middle part depends on `n mod 4`: nothing for `4m`, the center scalar
/// for `4m+1`, one extra 2x2 block (`mid_block`) for `4m+2`, and an extra
/// pair block `B_{m+1}` followed by the center scalar for `4m+3`.
///
/// `B` blocks are the even-numbered pair blocks in their natural row order;
/// `C` blocks are the odd-numbered pair blocks with rows and columns
/// reversed, stored here in output order (highest pair first). The
/// permutation swaps positions `i` and `n-i` for every odd `i < n-i`; it is
/// an involution.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiagonalForm<T> {
    pub(crate) n: usize,
    pub(crate) b_blocks: Vec<Block2<T>>,
    pub(crate) mid_block: Option<Block2<T>>,
    pub(crate) center: Option<T>,
    pub(crate) c_blocks: Vec<Block2<T>>,
    pub(crate) perm: Permutation,
}

impl<T: Scalar> BlockDiagonalForm<T> {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `B_1..B_m` (and `B_{m+1}` when `n = 4m+3`), in output order.
    pub fn b_blocks(&self) -> &[Block2<T>] {
        &self.b_blocks
    }

    /// The central 2x2 block, present only when `n = 4m+2`.
    pub fn mid_block(&self) -> Option<&Block2<T>> {
        self.mid_block.as_ref()
    }

    /// The center scalar, present only for odd `n`.
    pub fn center(&self) -> Option<T> {
        self.center
    }

    /// `C_m..C_1` in output order (note the reversed block numbering).
    pub fn c_blocks(&self) -> &[Block2<T>] {
        &self.c_blocks
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// All 2x2 blocks in output order, with the output row index of each
    /// block's first row.
    pub fn blocks_with_offsets(&self) -> Vec<(usize, &Block2<T>)> {
        let mut out = Vec::new();
        let mut pos = 0;
        for b in &self.b_blocks {
            out.push((pos, b));
            pos += 2;
        }
        if let Some(m) = &self.mid_block {
            out.push((pos, m));
            pos += 2;
        }
        if self.center.is_some() {
            pos += 1;
        }
        for c in &self.c_blocks {
            out.push((pos, c));
            pos += 2;
        }
        out
    }

    /// Output row index of the center scalar, when present.
    pub fn center_offset(&self) -> Option<usize> {
        self.center.map(|_| 2 * self.b_blocks.len())
    }

    /// The assembled block-diagonal matrix `P X P^T` as a dense matrix.
    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut out = DenseMatrix::zeros(self.n, self.n);
        for (pos, b) in self.blocks_with_offsets() {
            out[(pos, pos)] = b.a;
            out[(pos, pos + 1)] = b.b;
            out[(pos + 1, pos)] = b.c;
            out[(pos + 1, pos + 1)] = b.d;
        }
        if let (Some(c), Some(pos)) = (self.center, self.center_offset()) {
            out[(pos, pos)] = c;
        }
        out
    }

    /// Undo the permutation: rebuild the cross matrix the form was taken
    /// from. Pure data movement, so the round trip through
    /// [`CrossMatrix::block_diagonalize`] is bit-exact.
    pub fn reconstruct(&self) -> Result<CrossMatrix<T>> {
        let n = self.n;
        let m = n / 4;
        let expected_b = m + usize::from(n % 4 == 3);
        if self.b_blocks.len() != expected_b
            || self.c_blocks.len() != m
            || self.mid_block.is_some() != (n % 4 == 2)
            || self.center.is_some() != (n % 2 == 1)
            || self.perm.len() != n
        {
            return Err(CrossError::MalformedForm);
        }
        let mut x = CrossMatrix::zeros(n);
        for (j, b) in self.b_blocks.iter().enumerate() {
            // B_{j+1} carries pair 2j in natural row order.
            x.set_pair_block(2 * j, b);
        }
        if let Some(mb) = &self.mid_block {
            // The innermost pair of n = 4m+2, rows (n/2 - 1, n/2).
            x.set_pair_block(n / 2 - 1, mb);
        }
        if let Some(c) = self.center {
            x.set_center(c);
        }
        for (j, cb) in self.c_blocks.iter().enumerate() {
            // Output slot j holds C_{m-j}, i.e. pair 2(m-j)-1 with rows and
            // columns reversed.
            let i = m - j;
            let p = 2 * i - 1;
            x.set_pair_block(p, &Block2::new(cb.d, cb.c, cb.b, cb.a));
        }
        Ok(x)
    }
}

impl<T: Scalar> CrossMatrix<T> {
    /// Decompose into the commuting rank-two factors, one per pair, plus the
    /// center factor for odd order.
    pub fn rank_two_factors(&self) -> RankTwoFactorization<T> {
        let k = self.num_pairs();
        let factors = (0..k)
            .map(|p| self.pair_block(p).expect("pair index in range"))
            .collect();
        RankTwoFactorization {
            n: self.order(),
            factors,
            center: self.center(),
        }
    }

    /// Compute the permutation-similar block-diagonal form.
    ///
    /// Everything is exact data movement: the blocks alias entries of `self`
    /// and the permutation is the involution swapping `i` with `n-i` for
    /// every odd `i < n-i` (the composite of the elementary transpositions
    /// that peel off one leading and one trailing block at a time).
    pub fn block_diagonalize(&self) -> BlockDiagonalForm<T> {
        let n = self.order();
        let m = n / 4;
        let b_count = m + usize::from(n % 4 == 3);

        let b_blocks: Vec<Block2<T>> = (0..b_count)
            .map(|j| self.pair_block(2 * j).expect("even pair in range"))
            .collect();
        let mid_block = if n % 4 == 2 {
            Some(self.pair_block(n / 2 - 1).expect("innermost pair in range"))
        } else {
            None
        };
        let center = self.center();
        let c_blocks: Vec<Block2<T>> = (0..m)
            .map(|j| {
                let i = m - j;
                let b = self.pair_block(2 * i - 1).expect("odd pair in range");
                // Reverse rows and columns: C_i lists the higher index first.
                Block2::new(b.d, b.c, b.b, b.a)
            })
            .collect();

        let mut map: Vec<usize> = (0..n).collect();
        let mut i = 1;
        while i < n - i {
            map.swap(i, n - i);
            i += 2;
        }
        let perm = Permutation { map };

        BlockDiagonalForm {
            n,
            b_blocks,
            mid_block,
            center,
            c_blocks,
            perm,
        }
    }
}
