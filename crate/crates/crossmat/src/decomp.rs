//! Structure-preserving factorizations. Every factor produced here is again
//! a cross matrix, and every routine costs O(n): each pair of symmetric
//! indices is handled by a closed-form 2x2 computation.

use num_traits::{One, Zero};
use crate::block::Block2;
use crate::cross::CrossMatrix;
use crate::error::{CrossError, PivotSite, Result};
use crate::linalg::quadratic_roots;
use crate::scalar::{RealScalar, Scalar};

/// Doolittle factorization `X = L U` with `L` unit lower triangular and `U`
/// upper triangular, both cross matrices.
#[derive(Clone, Debug)]
pub struct CrossLu<T: Scalar> {
    pub l: CrossMatrix<T>,
    pub u: CrossMatrix<T>,
}

/// QR factorization `X = Q R` with `Q` unitary and `R` upper triangular with
/// real nonnegative diagonal, both cross matrices.
#[derive(Clone, Debug)]
pub struct CrossQr<T: Scalar> {
    pub q: CrossMatrix<T>,
    pub r: CrossMatrix<T>,
}

/// Eigendecomposition `X V = V diag(d)` with `V` a cross matrix of unit
/// eigenvector columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomp<T: Scalar> {
    pub v: CrossMatrix<T>,
    pub d: Vec<T>,
}

/// Singular value decomposition `X = U diag(s) V*` with unitary cross
/// factors. Within each index pair `(p, n-1-p)` the larger singular value
/// sits at the lower index `p`.
#[derive(Clone, Debug)]
pub struct CrossSvd<T: Scalar> {
    pub u: CrossMatrix<T>,
    pub s: Vec<T::Real>,
    pub v: CrossMatrix<T>,
}

impl<T: Scalar> CrossSvd<T> {
    /// Singular values sorted descending, each with the position it occupies
    /// in `s` (ties keep ascending positions).
    pub fn sorted_singular_values(&self) -> Vec<(T::Real, usize)> {
        use std::cmp::Ordering;
        let mut out: Vec<(T::Real, usize)> =
            self.s.iter().copied().enumerate().map(|(i, s)| (s, i)).collect();
        out.sort_by(|x, y| {
            y.0.partial_cmp(&x.0)
                .unwrap_or(Ordering::Equal)
                .then(x.1.cmp(&y.1))
        });
        out
    }
}

/// Polar factorization `X = U H` with `U` unitary and `H` Hermitian positive
/// semidefinite, both cross matrices.
#[derive(Clone, Debug)]
pub struct PolarDecomp<T: Scalar> {
    pub u: CrossMatrix<T>,
    pub h: CrossMatrix<T>,
}

impl<T: Scalar> CrossMatrix<T> {
    /// LU factorization without pivoting. Each pair eliminates one entry;
    /// a diagonal pivot whose magnitude does not clear a relative threshold
    /// against its pair block fails with [`CrossError::ZeroPivot`].
    pub fn lu(&self) -> Result<CrossLu<T>> {
        let n = self.order();
        let mut l = CrossMatrix::identity(n);
        let mut u = CrossMatrix::zeros(n);
        for p in 0..self.num_pairs() {
            let b = self.pair_block(p).expect("pair index in range");
            if b.a.abs() <= T::eps() * b.max_abs() {
                return Err(CrossError::ZeroPivot { pair: p + 1 });
            }
            let ell = b.c / b.a;
            l.set_pair_block(p, &Block2::new(T::one(), T::zero(), ell, T::one()));
            u.set_pair_block(
                p,
                &Block2::new(b.a, b.b, T::zero(), b.d - ell * b.b),
            );
        }
        if let Some(c) = self.center() {
            u.set_center(c);
        }
        Ok(CrossLu { l, u })
    }

    /// Cholesky factorization `X = R* R` of a Hermitian positive definite
    /// cross matrix; `R` is upper triangular with real positive diagonal.
    ///
    /// Hermitian symmetry is required exactly; definiteness is checked per
    /// pair block and at the center.
    // The negated comparisons are load-bearing: a NaN pivot must fail the
    // definiteness test, and `x <= 0` would let it through.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn cholesky(&self) -> Result<CrossMatrix<T>> {
        if !self.is_hermitian() {
            return Err(CrossError::NotHermitian);
        }
        let n = self.order();
        let mut r = CrossMatrix::zeros(n);
        for p in 0..self.num_pairs() {
            let b = self.pair_block(p).expect("pair index in range");
            let a = b.a.re();
            if !(a > T::Real::zero()) {
                return Err(CrossError::NotPositiveDefinite(PivotSite::Pair(p + 1)));
            }
            let schur = b.d.re() - b.b.abs() * b.b.abs() / a;
            if !(schur > T::Real::zero()) {
                return Err(CrossError::NotPositiveDefinite(PivotSite::Pair(p + 1)));
            }
            let r11 = a.sqrt();
            let r12 = b.b / T::from_real(r11);
            r.set_pair_block(
                p,
                &Block2::new(
                    T::from_real(r11),
                    r12,
                    T::zero(),
                    T::from_real(schur.sqrt()),
                ),
            );
        }
        if let Some(c) = self.center() {
            let cr = c.re();
            if !(cr > T::Real::zero()) {
                return Err(CrossError::NotPositiveDefinite(PivotSite::Center));
            }
            r.set_center(T::from_real(cr.sqrt()));
        }
        Ok(r)
    }

    /// QR factorization via one Givens rotation per pair. Always succeeds;
    /// `R`'s diagonal is real and nonnegative, with the rotation phases
    /// absorbed into `Q`.
    pub fn qr(&self) -> CrossQr<T> {
        let n = self.order();
        let mut q = CrossMatrix::identity(n);
        let mut r = CrossMatrix::zeros(n);
        for p in 0..self.num_pairs() {
            let blk = self.pair_block(p).expect("pair index in range");
            let rho = blk.a.abs().hypot(blk.c.abs());
            if rho == T::Real::zero() {
                // First column is zero; only the second row needs its phase
                // pulled out.
                let phase = blk.d.phase_or_one();
                q.set_pair_block(p, &Block2::new(T::one(), T::zero(), T::zero(), phase));
                r.set_pair_block(
                    p,
                    &Block2::new(
                        T::zero(),
                        blk.b,
                        T::zero(),
                        T::from_real(blk.d.abs()),
                    ),
                );
                continue;
            }
            let rho_t = T::from_real(rho);
            let r12 = (blk.a.conj() * blk.b + blk.c.conj() * blk.d) / rho_t;
            let w = blk.det() / rho_t;
            let phase = w.phase_or_one();
            q.set_pair_block(
                p,
                &Block2::new(
                    blk.a / rho_t,
                    -blk.c.conj() * phase / rho_t,
                    blk.c / rho_t,
                    blk.a.conj() * phase / rho_t,
                ),
            );
            r.set_pair_block(
                p,
                &Block2::new(rho_t, r12, T::zero(), T::from_real(w.abs())),
            );
        }
        if let Some(c) = self.center() {
            q.set_center(c.phase_or_one());
            r.set_center(T::from_real(c.abs()));
        }
        CrossQr { q, r }
    }

    /// Eigendecomposition with unit eigenvector columns. Within a pair the
    /// larger-magnitude eigenvalue comes first; each eigenvector is scaled so
    /// its first nonzero component is real and positive.
    ///
    /// Fails with [`CrossError::NotDiagonalizable`] when a pair block has a
    /// (numerically) repeated eigenvalue but is not itself (numerically)
    /// scalar, and with [`CrossError::NeedsComplex`] when a real scalar type
    /// cannot represent a pair's complex spectrum.
    pub fn spectral(&self) -> Result<SpectralDecomp<T>> {
        let n = self.order();
        let mut v = CrossMatrix::identity(n);
        let mut d = vec![T::zero(); n];
        for p in 0..self.num_pairs() {
            let blk = self.pair_block(p).expect("pair index in range");
            let (l1, l2) = quadratic_roots(blk.trace(), blk.det())
                .ok_or(CrossError::NeedsComplex { pair: p + 1 })?;
            let scale = blk.frobenius_norm();
            let theta = T::eps().sqrt() * scale;
            if (l1 - l2).abs() <= theta {
                let mu = (l1 + l2) / T::from_f64(2.0);
                let shifted = Block2::new(blk.a - mu, blk.b, blk.c, blk.d - mu);
                if shifted.frobenius_norm() <= theta {
                    // Numerically a multiple of the identity: the standard
                    // basis already diagonalizes it.
                    d[p] = l1;
                    d[n - 1 - p] = l2;
                    continue;
                }
                return Err(CrossError::NotDiagonalizable { pair: p + 1 });
            }
            let x1 = eigenvector_2x2(&blk, l1);
            let x2 = eigenvector_2x2(&blk, l2);
            v.set_pair_block(p, &Block2::new(x1.0, x2.0, x1.1, x2.1));
            d[p] = l1;
            d[n - 1 - p] = l2;
        }
        if let Some(c) = self.center() {
            d[n / 2] = c;
        }
        Ok(SpectralDecomp { v, d })
    }

    /// Singular value decomposition. Each pair block gets an exact 2x2 SVD;
    /// the center contributes its modulus with the phase carried by `U`.
    pub fn svd(&self) -> CrossSvd<T> {
        let n = self.order();
        let mut u = CrossMatrix::identity(n);
        let mut v = CrossMatrix::identity(n);
        let mut s = vec![T::Real::zero(); n];
        for p in 0..self.num_pairs() {
            let blk = self.pair_block(p).expect("pair index in range");
            let (ub, (s1, s2), vb) = svd_2x2(&blk);
            u.set_pair_block(p, &ub);
            v.set_pair_block(p, &vb);
            s[p] = s1;
            s[n - 1 - p] = s2;
        }
        if let Some(c) = self.center() {
            s[n / 2] = c.abs();
            u.set_center(c.phase_or_one());
        }
        CrossSvd { u, s, v }
    }

    /// Polar factorization `X = U H` derived from the SVD. `H` is assembled
    /// pairwise so that it is Hermitian exactly, not just to rounding.
    pub fn polar(&self) -> PolarDecomp<T> {
        let svd = self.svd();
        let n = self.order();
        let u = svd
            .u
            .mul(&svd.v.conj_transpose())
            .expect("factor orders agree");
        let mut h = CrossMatrix::zeros(n);
        for p in 0..self.num_pairs() {
            let q = n - 1 - p;
            let vb = svd.v.pair_block(p).expect("pair index in range");
            let s1 = T::from_real(svd.s[p]);
            let s2 = T::from_real(svd.s[q]);
            let hpp = s1 * T::from_real(vb.a.abs() * vb.a.abs())
                + s2 * T::from_real(vb.b.abs() * vb.b.abs());
            let hqq = s1 * T::from_real(vb.c.abs() * vb.c.abs())
                + s2 * T::from_real(vb.d.abs() * vb.d.abs());
            let hpq = s1 * vb.a * vb.c.conj() + s2 * vb.b * vb.d.conj();
            h.set_pair_block(p, &Block2::new(hpp, hpq, hpq.conj(), hqq));
        }
        if self.center().is_some() {
            h.set_center(T::from_real(svd.s[n / 2]));
        }
        PolarDecomp { u, h }
    }
}

/// Unit eigenvector of a 2x2 block for the simple eigenvalue `lambda`,
/// normalized so the first nonzero component is real positive.
fn eigenvector_2x2<T: Scalar>(b: &Block2<T>, lambda: T) -> (T, T) {
    let row1 = (b.a - lambda, b.b);
    let row2 = (b.c, b.d - lambda);
    let m1 = row1.0.abs().max(row1.1.abs());
    let m2 = row2.0.abs().max(row2.1.abs());
    let row = if m2 > m1 { row2 } else { row1 };
    let (mut v1, mut v2) = (row.1, -row.0);
    let nrm = T::from_real(v1.abs().hypot(v2.abs()));
    v1 /= nrm;
    v2 /= nrm;
    let lead = if v1.abs() > T::Real::zero() { v1 } else { v2 };
    let ph = lead.phase_or_one().conj();
    (v1 * ph, v2 * ph)
}

/// Result of one 2x2 SVD: left factor, ordered singular values, right factor.
type Svd2<T> = (
    Block2<T>,
    (<T as Scalar>::Real, <T as Scalar>::Real),
    Block2<T>,
);

/// Exact SVD of one 2x2 block: returns `(U, (s1, s2), V)` with
/// `B = U diag(s1, s2) V*` and `s1 >= s2 >= 0`.
fn svd_2x2<T: Scalar>(b: &Block2<T>) -> Svd2<T> {
    if T::IS_COMPLEX {
        svd_2x2_complex(b)
    } else {
        svd_2x2_real(b)
    }
}

/// Real 2x2 SVD through the rotation-angle closed form: the sum and
/// difference of the singular values come from two hypotenuses, the factor
/// angles from two arctangents.
fn svd_2x2_real<T: Scalar>(blk: &Block2<T>) -> Svd2<T> {
    let (a, b, c, d) = (blk.a.re(), blk.b.re(), blk.c.re(), blk.d.re());
    let z1 = (a + d).hypot(c - b);
    let z2 = (a - d).hypot(c + b);
    let two = T::Real::from_f64(2.0);
    let s1 = (z1 + z2) / two;
    let mut s2 = (z1 - z2) / two;
    let beta = (c - b).atan2(a + d);
    let gamma = (c + b).atan2(a - d);
    let phi = (beta + gamma) / two;
    let psi = (gamma - beta) / two;
    let mut u = rotation::<T>(phi);
    let v = rotation::<T>(psi);
    if s2 < T::Real::zero() {
        s2 = -s2;
        u.b = -u.b;
        u.d = -u.d;
    }
    (u, (s1, s2), v)
}

fn rotation<T: Scalar>(angle: T::Real) -> Block2<T> {
    let (sn, cs) = (angle.sin(), angle.cos());
    Block2::new(
        T::from_real(cs),
        T::from_real(-sn),
        T::from_real(sn),
        T::from_real(cs),
    )
}

/// Complex 2x2 SVD: diagonalize the Gram matrix `B* B` with a phase strip
/// followed by a real Jacobi rotation, then read `U` off the image columns.
fn svd_2x2_complex<T: Scalar>(b: &Block2<T>) -> Svd2<T> {
    let g11 = b.a.abs() * b.a.abs() + b.c.abs() * b.c.abs();
    let g22 = b.b.abs() * b.b.abs() + b.d.abs() * b.d.abs();
    let g12 = b.a.conj() * b.b + b.c.conj() * b.d;
    let ph = g12.phase_or_one();
    let off = g12.abs();

    // Real rotation diagonalizing the phase-stripped Gram matrix.
    let (cs, sn) = if off == T::Real::zero() {
        (T::Real::one(), T::Real::zero())
    } else {
        let zeta = (g22 - g11) / (two_r::<T>() * off);
        let sign = if zeta < T::Real::zero() {
            -T::Real::one()
        } else {
            T::Real::one()
        };
        let t = sign / (zeta.abs() + (T::Real::one() + zeta * zeta).sqrt());
        let cs = T::Real::one() / (T::Real::one() + t * t).sqrt();
        (cs, t * cs)
    };
    // V = diag(1, conj(phase)) * [[cs, sn], [-sn, cs]]
    let cph = ph.conj();
    let v = Block2::new(
        T::from_real(cs),
        T::from_real(sn),
        -T::from_real(sn) * cph,
        T::from_real(cs) * cph,
    );

    let mut w1 = b.apply((v.a, v.c));
    let mut w2 = b.apply((v.b, v.d));
    let mut v = v;
    let n1 = w1.0.abs().hypot(w1.1.abs());
    let n2 = w2.0.abs().hypot(w2.1.abs());
    if n2 > n1 {
        std::mem::swap(&mut w1, &mut w2);
        v = Block2::new(v.b, v.a, v.d, v.c);
    }
    let s1 = w1.0.abs().hypot(w1.1.abs());
    if s1 == T::Real::zero() {
        return (
            Block2::identity(),
            (T::Real::zero(), T::Real::zero()),
            v,
        );
    }
    let s1t = T::from_real(s1);
    let u1 = (w1.0 / s1t, w1.1 / s1t);
    // The unitary complement of u1; its phase comes from the second image
    // column, which is orthogonal to u1 in exact arithmetic.
    let m = (-u1.1.conj(), u1.0.conj());
    let chi = m.0.conj() * w2.0 + m.1.conj() * w2.1;
    let s2 = chi.abs();
    let phase2 = chi.phase_or_one();
    let u2 = (m.0 * phase2, m.1 * phase2);
    let u = Block2::new(u1.0, u2.0, u1.1, u2.1);
    (u, (s1, s2), v)
}

fn two_r<T: Scalar>() -> T::Real {
    T::Real::from_f64(2.0)
}
