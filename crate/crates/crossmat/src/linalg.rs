//! Closed-form determinant, minors, adjugate, inverse, linear solve and
//! eigenvalues. Everything here is O(n): each pair of symmetric indices
//! contributes independently through its pair quantity `alpha`.

use num_traits::Zero;
use crate::block::Block2;
use crate::cross::CrossMatrix;
use crate::error::{CrossError, PivotSite, Result};
use crate::scalar::Scalar;

/// One quadratic factor `λ² − trace_term·λ + alpha` of the characteristic
/// polynomial, belonging to pair `pair` (0-based).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticFactor<T> {
    pub pair: usize,
    pub trace_term: T,
    pub alpha: T,
}

impl<T: Scalar> QuadraticFactor<T> {
    pub fn eval(&self, lambda: T) -> T {
        lambda * lambda - self.trace_term * lambda + self.alpha
    }

    /// Roots of the factor, larger magnitude first; `None` when the scalar
    /// type cannot represent them (negative real discriminant).
    pub fn roots(&self) -> Option<(T, T)> {
        quadratic_roots(self.trace_term, self.alpha)
    }
}

/// Roots of `λ² − t·λ + a` with the cancellation-avoiding evaluation: the
/// larger-magnitude root is `(t + s)/2` with `s = ±√(t²−4a)` sign-matched to
/// `t`, the other follows from the product identity `a / root1`.
///
/// Returns `None` when the discriminant has no square root in `T`.
pub(crate) fn quadratic_roots<T: Scalar>(t: T, a: T) -> Option<(T, T)> {
    let disc = t * t - T::from_f64(4.0) * a;
    let mut s = disc.disc_sqrt()?;
    if s == T::zero() {
        // Exactly confluent; avoids the product identity perturbing the
        // repeated root.
        let r = t / T::from_f64(2.0);
        return Some((r, r));
    }
    if (t.conj() * s).re() < T::Real::zero() {
        s = -s;
    }
    let r1 = (t + s) / T::from_f64(2.0);
    let r2 = if r1 == T::zero() {
        (t - s) / T::from_f64(2.0)
    } else {
        a / r1
    };
    Some((r1, r2))
}

/// Relative singularity test for one pair: `|alpha|` measured against the
/// product of the two row scales of the pair block.
pub(crate) fn pair_is_singular<T: Scalar>(b: &Block2<T>, alpha: T) -> bool {
    let scale = (b.a.abs() + b.b.abs()) * (b.d.abs() + b.c.abs());
    alpha.abs() <= T::eps() * scale
}

impl<T: Scalar> CrossMatrix<T> {
    /// Determinant: the product of all pair quantities `alpha`, times the
    /// center entry for odd order. O(n); zero is a valid result.
    pub fn det(&self) -> T {
        let mut d = T::one();
        for p in 0..self.num_pairs() {
            d *= self.pair_alpha(p).expect("pair index in range");
        }
        if let Some(c) = self.center() {
            d *= c;
        }
        d
    }

    /// Product of `alpha` over all pairs except `skip`, times the center
    /// entry when `include_center`. The division-free building block for
    /// minors of singular matrices.
    fn alpha_product_excluding(&self, skip: Option<usize>, include_center: bool) -> T {
        let mut prod = T::one();
        for p in 0..self.num_pairs() {
            if Some(p) == skip {
                continue;
            }
            prod *= self.pair_alpha(p).expect("pair index in range");
        }
        if include_center {
            if let Some(c) = self.center() {
                prod *= c;
            }
        }
        prod
    }

    /// Determinant of the submatrix obtained by deleting `row` and `col`
    /// (0-based).
    ///
    /// Only three index patterns give a nonzero minor: `col == row` off the
    /// center, `col == n-1-row` off the diagonal, and the shared center of an
    /// odd-order matrix; everywhere else two rows of the submatrix are
    /// dependent. The nonzero cases are quotients of `det` by the pair's
    /// `alpha` (or by the center); when that divisor is exactly zero the
    /// value is recomputed division-free from the product of the surviving
    /// pair quantities.
    pub fn minor_det(&self, row: usize, col: usize) -> Result<T> {
        let n = self.order();
        if row >= n {
            return Err(CrossError::IndexOutOfRange { index: row, bound: n });
        }
        if col >= n {
            return Err(CrossError::IndexOutOfRange { index: col, bound: n });
        }
        let q = n - 1 - row;
        if row == col && row == q {
            // Deleting the shared center row and column leaves the even-order
            // cross matrix of all remaining pairs.
            let c = self.center().expect("odd order");
            return Ok(if c != T::zero() {
                self.det() / c
            } else {
                self.alpha_product_excluding(None, false)
            });
        }
        if row == col {
            let pair = row.min(q);
            let alpha = self.pair_alpha(pair).expect("pair index in range");
            let lead = self.diag()[q];
            return Ok(if alpha != T::zero() {
                lead * self.det() / alpha
            } else {
                lead * self.alpha_product_excluding(Some(pair), true)
            });
        }
        if col == q {
            // The surviving anti-diagonal entry of the deleted cross, with
            // the parity factor from its position in the submatrix.
            let pair = row.min(q);
            let alpha = self.pair_alpha(pair).expect("pair index in range");
            let lead = self.anti()[col];
            let value = if alpha != T::zero() {
                lead * self.det() / alpha
            } else {
                lead * self.alpha_product_excluding(Some(pair), true)
            };
            return Ok(if n.is_multiple_of(2) { value } else { -value });
        }
        Ok(T::zero())
    }

    /// Adjugate, satisfying `X · adjugate(X) = det(X) · I` for every cross
    /// matrix including singular ones.
    ///
    /// Entries are the signed minors; they are evaluated division-free from
    /// prefix/suffix products of the pair quantities, so no `alpha` (or
    /// center) ever appears as a divisor and exact zeros pass through
    /// unharmed.
    pub fn adjugate(&self) -> CrossMatrix<T> {
        let n = self.order();
        let k = self.num_pairs();
        let alphas: Vec<T> = (0..k)
            .map(|p| self.pair_alpha(p).expect("pair index in range"))
            .collect();
        let mut prefix = vec![T::one(); k + 1];
        for p in 0..k {
            prefix[p + 1] = prefix[p] * alphas[p];
        }
        let mut suffix = vec![T::one(); k + 1];
        for p in (0..k).rev() {
            suffix[p] = alphas[p] * suffix[p + 1];
        }
        let center = self.center();

        let mut out = CrossMatrix::zeros(n);
        for p in 0..k {
            let mut excl = prefix[p] * suffix[p + 1];
            if let Some(c) = center {
                excl *= c;
            }
            let b = self.pair_block(p).expect("pair index in range");
            out.set_pair_block(
                p,
                &Block2::new(b.d * excl, -b.b * excl, -b.c * excl, b.a * excl),
            );
        }
        if center.is_some() {
            out.set_center(prefix[k]);
        }
        out
    }

    /// Inverse via the closed form: diagonal entries are the opposite
    /// diagonal entry over `alpha`, anti-diagonal entries are the negated
    /// entry over `alpha`, the center inverts directly. O(n).
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        let mut out = CrossMatrix::zeros(n);
        for p in 0..self.num_pairs() {
            let b = self.pair_block(p).expect("pair index in range");
            let alpha = b.det();
            if pair_is_singular(&b, alpha) {
                return Err(CrossError::Singular(PivotSite::Pair(p + 1)));
            }
            out.set_pair_block(
                p,
                &Block2::new(b.d / alpha, -b.b / alpha, -b.c / alpha, b.a / alpha),
            );
        }
        if let Some(c) = self.center() {
            if c.abs() == T::Real::zero() {
                return Err(CrossError::Singular(PivotSite::Center));
            }
            out.set_center(T::one() / c);
        }
        Ok(out)
    }

    /// Solve `X x = b` pairwise: each pair is an independent 2x2 system and
    /// the center is a scalar division. O(n), never forms the inverse.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.order();
        if b.len() != n {
            return Err(CrossError::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let mut x = vec![T::zero(); n];
        for p in 0..self.num_pairs() {
            let q = n - 1 - p;
            let blk = self.pair_block(p).expect("pair index in range");
            let alpha = blk.det();
            if pair_is_singular(&blk, alpha) {
                return Err(CrossError::Singular(PivotSite::Pair(p + 1)));
            }
            x[p] = (blk.d * b[p] - blk.b * b[q]) / alpha;
            x[q] = (blk.a * b[q] - blk.c * b[p]) / alpha;
        }
        if let Some(c) = self.center() {
            if c.abs() == T::Real::zero() {
                return Err(CrossError::Singular(PivotSite::Center));
            }
            x[n / 2] = b[n / 2] / c;
        }
        Ok(x)
    }

    /// The characteristic polynomial, factored: one quadratic per pair plus
    /// the linear root at the center entry for odd order.
    pub fn char_quadratics(&self) -> (Vec<QuadraticFactor<T>>, Option<T>) {
        let factors = (0..self.num_pairs())
            .map(|p| {
                let b = self.pair_block(p).expect("pair index in range");
                QuadraticFactor {
                    pair: p,
                    trace_term: b.trace(),
                    alpha: b.det(),
                }
            })
            .collect();
        (factors, self.center())
    }

    /// All `n` eigenvalues, pair-aligned: the two roots of pair `p` sit at
    /// positions `p` (larger magnitude) and `n-1-p`, the center eigenvalue at
    /// the middle. Not sorted; see [`sort_desc_by_magnitude`].
    ///
    /// For a real scalar type a pair with negative discriminant cannot be
    /// represented and fails with [`CrossError::NeedsComplex`];
    /// [`CrossMatrix::eigenvalues_complex`] always succeeds.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        let n = self.order();
        let mut ev = vec![T::zero(); n];
        for p in 0..self.num_pairs() {
            let b = self.pair_block(p).expect("pair index in range");
            let (r1, r2) = quadratic_roots(b.trace(), b.det())
                .ok_or(CrossError::NeedsComplex { pair: p + 1 })?;
            ev[p] = r1;
            ev[n - 1 - p] = r2;
        }
        if let Some(c) = self.center() {
            ev[n / 2] = c;
        }
        Ok(ev)
    }

    /// Eigenvalues in the complex scalar type; total for every input.
    pub fn eigenvalues_complex(&self) -> Vec<T::Complex> {
        self.to_complex()
            .eigenvalues()
            .expect("complex quadratics always have roots")
    }
}

/// Sort scalars by descending magnitude, with deterministic tie-breaking on
/// the real then imaginary parts.
pub fn sort_desc_by_magnitude<T: Scalar>(values: &mut [T]) {
    use std::cmp::Ordering;
    values.sort_by(|x, y| {
        y.abs()
            .partial_cmp(&x.abs())
            .unwrap_or(Ordering::Equal)
            .then(y.re().partial_cmp(&x.re()).unwrap_or(Ordering::Equal))
            .then(y.im().partial_cmp(&x.im()).unwrap_or(Ordering::Equal))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn x3() -> CrossMatrix<f64> {
        CrossMatrix::new(vec![1.0, 2.0, 3.0], vec![4.0, 2.0, 5.0]).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(CrossMatrix::<f64>::identity(7).det(), 1.0);
        assert_eq!(x3().det(), -34.0);
        let x2 = CrossMatrix::new(vec![1.0, 4.0], vec![2.0, 3.0]).unwrap();
        assert_eq!(x2.det(), -2.0);
    }

    #[test]
    fn minor_examples() {
        let x = x3();
        assert_eq!(x.minor_det(0, 0).unwrap(), 6.0);
        assert_eq!(x.minor_det(0, 1).unwrap(), 0.0);
        assert_eq!(x.minor_det(1, 1).unwrap(), -17.0);
        assert_eq!(x.minor_det(0, 2).unwrap(), -10.0);
        assert!(x.minor_det(3, 0).is_err());
    }

    #[test]
    fn minor_zero_divisor_fallback() {
        // alpha of the only pair is exactly zero.
        let x = CrossMatrix::new(vec![1.0, 2.0, 1.0], vec![1.0, 2.0, 1.0]).unwrap();
        assert_eq!(x.pair_alpha(0).unwrap(), 0.0);
        // Deleting row 0, col 0 leaves [[2,0],[0,1]].
        assert_eq!(x.minor_det(0, 0).unwrap(), 2.0);
        // Deleting row 0, col 2 leaves [[0,2],[1,0]] with determinant -2,
        // and the odd-order sign flips it.
        assert_eq!(x.minor_det(0, 2).unwrap(), -2.0);
        // Zero center: minor at the center is the product of pair alphas.
        let y = CrossMatrix::new(vec![2.0, 0.0, 3.0], vec![1.0, 0.0, 1.0]).unwrap();
        assert_eq!(y.minor_det(1, 1).unwrap(), 5.0);
    }

    #[test]
    fn adjugate_examples() {
        let i4 = CrossMatrix::<f64>::identity(4);
        assert_eq!(i4.adjugate(), i4);
        let x2 = CrossMatrix::new(vec![1.0, 4.0], vec![2.0, 3.0]).unwrap();
        let adj = x2.adjugate();
        assert_eq!(adj.diag(), &[4.0, 1.0]);
        assert_eq!(adj.anti(), &[-2.0, -3.0]);
    }

    #[test]
    fn adjugate_matches_signed_minors() {
        let x = x3();
        let adj = x.adjugate();
        for i in 0..3 {
            for j in 0..3 {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let expect = sign * x.minor_det(j, i).unwrap();
                assert!((adj.get(i, j) - expect).abs() < 1e-12, "({i},{j})");
            }
        }
    }

    #[test]
    fn adjugate_law_holds_when_singular() {
        let x = CrossMatrix::new(vec![1.0, 2.0, 1.0], vec![1.0, 2.0, 1.0]).unwrap();
        assert_eq!(x.det(), 0.0);
        let prod = x.mul(&x.adjugate()).unwrap();
        assert_eq!(prod, CrossMatrix::zeros(3));
    }

    #[test]
    fn inverse_examples() {
        let i5 = CrossMatrix::<f64>::identity(5);
        assert_eq!(i5.inverse().unwrap(), i5);

        let x = x3();
        let inv = x.inverse().unwrap();
        let alpha = -17.0;
        assert_eq!(inv.diag(), &[3.0 / alpha, 0.5, 1.0 / alpha]);
        assert_eq!(inv.anti(), &[-4.0 / alpha, 0.5, -5.0 / alpha]);
        let prod = x.mul(&inv).unwrap();
        let id = CrossMatrix::identity(3);
        assert!(prod.sub(&id).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn inverse_singular_cases() {
        let x = CrossMatrix::new(vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(
            x.inverse().unwrap_err(),
            CrossError::Singular(PivotSite::Pair(1))
        );
        let y = CrossMatrix::new(vec![1.0, 0.0, 3.0], vec![2.0, 0.0, 1.0]).unwrap();
        assert_eq!(
            y.inverse().unwrap_err(),
            CrossError::Singular(PivotSite::Center)
        );
    }

    #[test]
    fn solve_examples() {
        let i3 = CrossMatrix::<f64>::identity(3);
        assert_eq!(i3.solve(&[4.0, 5.0, 6.0]).unwrap(), vec![4.0, 5.0, 6.0]);

        let x = x3();
        assert_eq!(x.solve(&[1.0, 2.0, 5.0]).unwrap(), vec![1.0, 1.0, 0.0]);

        let y = CrossMatrix::new(vec![2.0, 5.0], vec![1.0, 4.0]).unwrap();
        assert_eq!(y.solve(&[3.0, 9.0]).unwrap(), vec![1.0, 1.0]);

        assert!(x.solve(&[1.0]).is_err());
        let s = CrossMatrix::new(vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(
            s.solve(&[1.0, 1.0]).unwrap_err(),
            CrossError::Singular(PivotSite::Pair(1))
        );
    }

    #[test]
    fn char_quadratics_examples() {
        let (f, lin) = CrossMatrix::<f64>::identity(2).char_quadratics();
        assert_eq!(f, vec![QuadraticFactor { pair: 0, trace_term: 2.0, alpha: 1.0 }]);
        assert_eq!(lin, None);

        let x = CrossMatrix::new(vec![1.0, 4.0], vec![5.0, 8.0]).unwrap();
        let (f, _) = x.char_quadratics();
        assert_eq!(f[0].trace_term, 5.0);
        assert_eq!(f[0].alpha, -36.0);
        assert_eq!(f[0].eval(9.0), 0.0);
        assert_eq!(f[0].eval(-4.0), 0.0);

        let (f, lin) = x3().char_quadratics();
        assert_eq!(f[0].trace_term, 4.0);
        assert_eq!(f[0].alpha, -17.0);
        assert_eq!(lin, Some(2.0));
    }

    #[test]
    fn eigenvalue_examples() {
        let j = CrossMatrix::<f64>::exchange(2);
        assert_eq!(j.eigenvalues().unwrap(), vec![1.0, -1.0]);

        let x = CrossMatrix::new(vec![1.0, 4.0], vec![5.0, 8.0]).unwrap();
        assert_eq!(x.eigenvalues().unwrap(), vec![9.0, -4.0]);

        let i5 = CrossMatrix::<f64>::identity(5);
        assert_eq!(i5.eigenvalues().unwrap(), vec![1.0; 5]);
    }

    #[test]
    fn eigenvalues_sum_and_product() {
        let x = x3();
        let ev = x.eigenvalues().unwrap();
        let sum: f64 = ev.iter().sum();
        let prod: f64 = ev.iter().product();
        assert!((sum - x.trace()).abs() < 1e-12);
        assert!((prod - x.det()).abs() < 1e-12);
    }

    #[test]
    fn complex_spectrum_needs_complex_scalars() {
        // Rotation-like pair: discriminant is negative.
        let x = CrossMatrix::new(vec![0.0, 0.0], vec![-1.0, 1.0]).unwrap();
        assert_eq!(
            x.eigenvalues().unwrap_err(),
            CrossError::NeedsComplex { pair: 1 }
        );
        let ev = x.eigenvalues_complex();
        assert!((ev[0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((ev[1] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn quadratic_root_stability() {
        // Roots near 1 and 1e-12: subtracting the discriminant root from the
        // trace would lose half the digits of the small root.
        let (r1, r2) = quadratic_roots(1.0 + 1.0e-12, 1.0e-12).unwrap();
        assert!((r1 - 1.0).abs() < 1.0e-11);
        assert!((r2 - 1.0e-12).abs() < 1.0e-18);
        // An exactly zero discriminant yields exactly equal roots.
        let (r1, r2) = quadratic_roots(1.0, 0.25).unwrap();
        assert_eq!(r1, 0.5);
        assert_eq!(r2, 0.5);
        // Zero trace with zero alpha.
        assert_eq!(quadratic_roots(0.0, 0.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn sorting_utility() {
        let mut v = vec![1.0, -3.0, 2.0, -2.0];
        sort_desc_by_magnitude(&mut v);
        assert_eq!(v, vec![-3.0, 2.0, -2.0, 1.0]);
        let mut c = vec![Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)];
        sort_desc_by_magnitude(&mut c);
        assert_eq!(c[0], Complex64::new(2.0, 0.0));
    }
}
