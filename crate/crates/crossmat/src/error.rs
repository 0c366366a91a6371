//! Error taxonomy for cross-matrix construction and algorithms.

use std::error::Error;
use std::fmt;

/// Location of a failed pivot or non-positive quantity.
///
/// `Pair(i)` refers to the 1-based pair number `i`, i.e. the pair quantity
/// `alpha_i = x_ii * x_(n+1-i)(n+1-i) - x_i(n+1-i) * x_(n+1-i)i` written with
/// 1-based matrix indices. `Center` is the middle entry of an odd-order
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotSite {
    Pair(usize),
    Center,
}

impl fmt::Display for PivotSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PivotSite::Pair(i) => write!(f, "pair {i}"),
            PivotSite::Center => write!(f, "center"),
        }
    }
}

/// Everything that can go wrong in this crate.
///
/// Pair numbers carried by variants are 1-based (see [`PivotSite`]); entry
/// coordinates carried by [`CrossError::NotCross`] and bounds in
/// [`CrossError::IndexOutOfRange`] are 0-based like the Rust API.
#[derive(Debug, Clone, PartialEq)]
pub enum CrossError {
    /// A matrix of order zero was requested.
    ZeroOrder,
    /// Two operands or a matrix/vector pair have incompatible sizes.
    DimensionMismatch { expected: usize, got: usize },
    /// The two stored copies of an odd-order center entry disagree.
    CenterConflict,
    /// A dense input that must be square is not.
    NotSquare { rows: usize, cols: usize },
    /// A dense input has an off-cross entry above tolerance; reports the
    /// worst offender.
    NotCross { row: usize, col: usize, magnitude: f64 },
    /// An index is outside `0..bound`.
    IndexOutOfRange { index: usize, bound: usize },
    /// A pair quantity alpha_i (or the center entry) is zero or below the
    /// singularity threshold, so no inverse exists.
    Singular(PivotSite),
    /// Elimination hit a zero upper-left pivot in pair `pair` (1-based).
    ZeroPivot { pair: usize },
    /// The matrix is not exactly Hermitian.
    NotHermitian,
    /// A leading quantity that must be positive is not.
    NotPositiveDefinite(PivotSite),
    /// Pair `pair` (1-based) has a repeated eigenvalue with a deficient
    /// eigenspace, so no eigenvector basis exists.
    NotDiagonalizable { pair: usize },
    /// Pair `pair` (1-based) has a complex-conjugate eigenvalue pair that the
    /// real scalar type cannot represent.
    NeedsComplex { pair: usize },
    /// A scalar function visited a point where its derivative is needed but
    /// was not supplied.
    DerivativeRequired { function: String },
    /// A scalar function is undefined (non-finite) at an eigenvalue.
    DomainError { function: String, point: String },
    /// A factored or block form has inconsistent component sizes.
    MalformedForm,
}

impl fmt::Display for CrossError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossError::ZeroOrder => write!(f, "matrix order must be at least 1"),
            CrossError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            CrossError::CenterConflict => {
                write!(f, "center entry of odd-order matrix given two different values")
            }
            CrossError::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows}x{cols}")
            }
            CrossError::NotCross { row, col, magnitude } => write!(
                f,
                "entry ({row}, {col}) with magnitude {magnitude:e} lies off the cross"
            ),
            CrossError::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range for bound {bound}")
            }
            CrossError::Singular(site) => write!(f, "matrix is singular at {site}"),
            CrossError::ZeroPivot { pair } => {
                write!(f, "zero pivot in pair {pair}: no unpivoted elimination exists")
            }
            CrossError::NotHermitian => write!(f, "matrix is not Hermitian"),
            CrossError::NotPositiveDefinite(site) => {
                write!(f, "matrix is not positive definite at {site}")
            }
            CrossError::NotDiagonalizable { pair } => {
                write!(f, "pair {pair} is defective: matrix is not diagonalizable")
            }
            CrossError::NeedsComplex { pair } => write!(
                f,
                "pair {pair} has complex eigenvalues: use the complex-valued routine"
            ),
            CrossError::DerivativeRequired { function } => write!(
                f,
                "{function} needs a derivative at a (near-)confluent eigenvalue pair"
            ),
            CrossError::DomainError { function, point } => {
                write!(f, "{function} is undefined at eigenvalue {point}")
            }
            CrossError::MalformedForm => write!(f, "factored form has inconsistent sizes"),
        }
    }
}

impl Error for CrossError {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CrossError>;
