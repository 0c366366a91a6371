//! Structured linear algebra for cross matrices.
//!
//! A cross matrix of order `n` has nonzero entries only on its main diagonal
//! and its anti-diagonal. That sparsity pattern is closed under addition,
//! multiplication, inversion and most factorizations, which turns the usual
//! O(n^3) dense algorithms into O(n) closed forms. This crate stores only the
//! 2n interesting entries and implements:
//!
//! - ring arithmetic, transposition and conversions ([`CrossMatrix`]);
//! - determinants, minors, adjugates, inverses, linear solves and
//!   eigenvalues (the `linalg` module);
//! - a rank-two factor decomposition and a permutation-based block
//!   diagonalization ([`structure`]);
//! - structure-preserving LU, Cholesky, QR, spectral, singular value and
//!   polar decompositions ([`decomp`]);
//! - analytic matrix functions such as `exp`, `log`, `sqrt` and real powers
//!   ([`funcs`]);
//! - a plain text format for matrices and vectors ([`io`]).
//!
//! Everything is generic over [`Scalar`], implemented for `f64` and
//! `num_complex::Complex64`.

pub mod block;
pub mod cross;
pub mod dense;
pub mod error;
pub mod scalar;

pub mod decomp;
pub mod funcs;
pub mod io;
pub mod linalg;
pub mod structure;

pub use block::Block2;
pub use cross::CrossMatrix;
pub use decomp::{CrossLu, CrossQr, CrossSvd, PolarDecomp, SpectralDecomp};
pub use dense::DenseMatrix;
pub use error::{CrossError, PivotSite, Result};
pub use funcs::ScalarFunction;
pub use linalg::QuadraticFactor;
pub use scalar::{RealScalar, Scalar};
pub use structure::{AssemblyOrder, BlockDiagonalForm, Permutation, RankTwoFactorization};
