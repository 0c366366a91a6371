//! Dense brute-force reference implementations used to certify the
//! structured routines in `crossmat`.
//!
//! Everything here is textbook-simple and O(n^3) or worse on purpose: these
//! functions define ground truth at small orders, so auditability beats
//! speed. Each factorization checks a residual on its own output before
//! returning and fails loudly when the certificate does not hold, so a test
//! expectation taken from this crate is never silently wrong.

use std::error::Error;
use std::fmt;

use crossmat::dense::DenseMatrix;
use crossmat::scalar::{RealScalar, Scalar};
use num_complex::Complex64;
use num_traits::{One, Zero};

/// Failure modes of the reference implementations.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    /// Exact zero pivot column: the matrix has no inverse.
    Singular,
    /// An iterative method hit its iteration cap.
    ConvergenceFailure(String),
    /// A computed result failed its own residual certificate.
    CertificationFailure(String),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Singular => write!(f, "matrix is singular"),
            OracleError::ConvergenceFailure(what) => {
                write!(f, "iteration did not converge: {what}")
            }
            OracleError::CertificationFailure(what) => {
                write!(f, "residual certificate failed: {what}")
            }
        }
    }
}

impl Error for OracleError {}

pub type Result<T> = std::result::Result<T, OracleError>;

fn certify(what: &str, residual: f64, bound: f64) -> Result<()> {
    if residual <= bound {
        Ok(())
    } else {
        Err(OracleError::CertificationFailure(format!(
            "{what}: residual {residual:.3e} exceeds {bound:.3e}"
        )))
    }
}

fn max1(x: f64) -> f64 {
    if x > 1.0 {
        x
    } else {
        1.0
    }
}

/// Plain triple-loop matrix product.
pub fn dense_mul<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> DenseMatrix<T> {
    assert_eq!(a.cols(), b.rows(), "inner dimensions must agree");
    let mut out = DenseMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let aik = a[(i, k)];
            for j in 0..b.cols() {
                let prod = aik * b[(k, j)];
                out[(i, j)] += prod;
            }
        }
    }
    out
}

/// Matrix-vector product.
pub fn dense_matvec<T: Scalar>(a: &DenseMatrix<T>, v: &[T]) -> Vec<T> {
    assert_eq!(a.cols(), v.len(), "vector length must match columns");
    let mut out = vec![T::zero(); a.rows()];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let prod = a[(i, j)] * v[j];
            out[i] += prod;
        }
    }
    out
}

fn dense_sub<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> DenseMatrix<T> {
    assert_eq!(a.rows(), b.rows());
    assert_eq!(a.cols(), b.cols());
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = a[(i, j)] - b[(i, j)];
        }
    }
    out
}

fn dense_scale<T: Scalar>(a: &DenseMatrix<T>, s: T) -> DenseMatrix<T> {
    a.map(|v| v * s)
}

/// How far a matrix is from the identity, in max-entry norm.
fn identity_distance<T: Scalar>(a: &DenseMatrix<T>) -> f64 {
    a.max_abs_diff(&DenseMatrix::identity(a.rows())).to_f64()
}

// ---------------------------------------------------------------------------
// LU with partial pivoting: determinant, solve, inverse
// ---------------------------------------------------------------------------

struct LuFactors<T: Scalar> {
    /// Unit lower factor below the diagonal, upper factor on and above it.
    lu: DenseMatrix<T>,
    /// Row `i` of the factored system reads source row `perm[i]`.
    perm: Vec<usize>,
    odd_swaps: bool,
    singular: bool,
}

fn lu_factor<T: Scalar>(a: &DenseMatrix<T>) -> LuFactors<T> {
    assert!(a.is_square(), "LU needs a square matrix");
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut odd = false;
    let mut singular = false;
    for k in 0..n {
        let mut best = k;
        let mut best_mag = lu[(k, k)].abs();
        for i in k + 1..n {
            let m = lu[(i, k)].abs();
            if m > best_mag {
                best = i;
                best_mag = m;
            }
        }
        if best_mag == T::Real::zero() {
            singular = true;
            continue;
        }
        if best != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(best, j)];
                lu[(best, j)] = tmp;
            }
            perm.swap(k, best);
            odd = !odd;
        }
        let piv = lu[(k, k)];
        for i in k + 1..n {
            let l = lu[(i, k)] / piv;
            lu[(i, k)] = l;
            for j in k + 1..n {
                let s = l * lu[(k, j)];
                lu[(i, j)] -= s;
            }
        }
    }
    LuFactors {
        lu,
        perm,
        odd_swaps: odd,
        singular,
    }
}

/// Determinant via the pivoted LU product with the swap sign.
pub fn dense_det<T: Scalar>(a: &DenseMatrix<T>) -> T {
    let f = lu_factor(a);
    let mut det = T::one();
    for k in 0..a.rows() {
        det *= f.lu[(k, k)];
    }
    if f.odd_swaps {
        -det
    } else {
        det
    }
}

fn lu_solve_one<T: Scalar>(f: &LuFactors<T>, b: &[T]) -> Vec<T> {
    let n = b.len();
    // Forward substitution with the unit lower factor on the permuted rhs.
    let mut y: Vec<T> = (0..n).map(|i| b[f.perm[i]]).collect();
    for i in 0..n {
        for j in 0..i {
            let s = f.lu[(i, j)] * y[j];
            y[i] -= s;
        }
    }
    // Back substitution with the upper factor.
    for i in (0..n).rev() {
        for j in i + 1..n {
            let s = f.lu[(i, j)] * y[j];
            y[i] -= s;
        }
        y[i] /= f.lu[(i, i)];
    }
    y
}

/// Linear solve; certifies the residual of its own answer.
pub fn dense_solve<T: Scalar>(a: &DenseMatrix<T>, b: &[T]) -> Result<Vec<T>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must match");
    let f = lu_factor(a);
    if f.singular {
        return Err(OracleError::Singular);
    }
    let x = lu_solve_one(&f, b);
    let ax = dense_matvec(a, &x);
    let mut residual = 0.0f64;
    let mut xmax = 0.0f64;
    let mut bmax = 0.0f64;
    for i in 0..b.len() {
        residual = residual.max((ax[i] - b[i]).abs().to_f64());
        xmax = xmax.max(x[i].abs().to_f64());
        bmax = bmax.max(b[i].abs().to_f64());
    }
    let scale = max1(a.max_abs().to_f64() * xmax + bmax);
    certify("solve", residual, 1e-10 * scale)?;
    Ok(x)
}

fn inverse_core<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let n = a.rows();
    let f = lu_factor(a);
    if f.singular {
        return Err(OracleError::Singular);
    }
    let mut inv = DenseMatrix::zeros(n, n);
    for col in 0..n {
        let mut e = vec![T::zero(); n];
        e[col] = T::one();
        let x = lu_solve_one(&f, &e);
        for row in 0..n {
            inv[(row, col)] = x[row];
        }
    }
    Ok(inv)
}

/// Inverse via LU column solves; certifies `A * inv(A) ~ I`.
pub fn dense_inverse<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    assert!(a.is_square(), "inverse needs a square matrix");
    let inv = inverse_core(a)?;
    let residual = identity_distance(&dense_mul(a, &inv));
    let scale = max1(a.max_abs().to_f64() * inv.max_abs().to_f64());
    certify("inverse", residual, 1e-10 * scale)?;
    Ok(inv)
}

// ---------------------------------------------------------------------------
// Givens QR
// ---------------------------------------------------------------------------

/// QR via Givens rotations; certifies the residual and Q's unitarity.
pub fn dense_qr<T: Scalar>(a: &DenseMatrix<T>) -> Result<(DenseMatrix<T>, DenseMatrix<T>)> {
    assert!(a.is_square(), "QR oracle expects a square matrix");
    let n = a.rows();
    let mut r = a.clone();
    // Accumulates the product of the rotations; Q is its conjugate transpose.
    let mut acc = DenseMatrix::<T>::identity(n);
    for j in 0..n {
        for i in j + 1..n {
            let f = r[(j, j)];
            let g = r[(i, j)];
            if g.abs() == T::Real::zero() {
                continue;
            }
            let d = T::from_real(f.abs().hypot(g.abs()));
            let cf = f.conj() / d;
            let cg = g.conj() / d;
            for (mat, width) in [(&mut r, n), (&mut acc, n)] {
                for k in 0..width {
                    let top = mat[(j, k)];
                    let bot = mat[(i, k)];
                    mat[(j, k)] = cf * top + cg * bot;
                    mat[(i, k)] = (f * bot - g * top) / d;
                }
            }
        }
    }
    let q = acc.conj_transpose();
    let residual = dense_sub(a, &dense_mul(&q, &r)).max_abs().to_f64();
    certify("qr residual", residual, 1e-12 * max1(a.max_abs().to_f64()))?;
    certify(
        "qr unitarity",
        identity_distance(&dense_mul(&q.conj_transpose(), &q)),
        1e-12,
    )?;
    Ok((q, r))
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD
// ---------------------------------------------------------------------------

/// SVD via one-sided Jacobi sweeps on the columns; singular values are
/// returned in descending order. Certifies reconstruction and unitarity.
#[allow(clippy::type_complexity)]
pub fn dense_svd<T: Scalar>(
    a: &DenseMatrix<T>,
) -> Result<(DenseMatrix<T>, Vec<T::Real>, DenseMatrix<T>)> {
    assert!(a.is_square(), "SVD oracle expects a square matrix");
    let n = a.rows();
    let mut u = a.clone();
    let mut v = DenseMatrix::<T>::identity(n);
    let skip_tol = T::Real::from_f64(1e-15);
    let mut converged = n < 2;
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let mut gii = T::Real::zero();
                let mut gjj = T::Real::zero();
                let mut gij = T::zero();
                for k in 0..n {
                    let ui = u[(k, i)];
                    let uj = u[(k, j)];
                    gii += ui.abs() * ui.abs();
                    gjj += uj.abs() * uj.abs();
                    gij += ui.conj() * uj;
                }
                let mag = gij.abs();
                if mag == T::Real::zero() || mag <= skip_tol * (gii * gjj).sqrt() {
                    continue;
                }
                rotated = true;
                let ph = gij.phase_or_one();
                let zeta = (gjj - gii) / (T::Real::from_f64(2.0) * mag);
                let one = T::Real::one();
                let t_mag = one / (zeta.abs() + (one + zeta * zeta).sqrt());
                let t = if zeta < T::Real::zero() { -t_mag } else { t_mag };
                let c = one / (one + t * t).sqrt();
                let s = c * t;
                let cc = T::from_real(c);
                let s_ph = T::from_real(s) * ph;
                let s_ph_conj = T::from_real(s) * ph.conj();
                for mat in [&mut u, &mut v] {
                    for k in 0..n {
                        let col_i = mat[(k, i)];
                        let col_j = mat[(k, j)];
                        mat[(k, i)] = cc * col_i - s_ph_conj * col_j;
                        mat[(k, j)] = s_ph * col_i + cc * col_j;
                    }
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(OracleError::ConvergenceFailure(
            "jacobi svd sweep cap reached".to_string(),
        ));
    }

    // Column norms are the singular values; sort descending, ties by index.
    let mut order: Vec<(T::Real, usize)> = (0..n)
        .map(|j| {
            let mut s = T::Real::zero();
            for k in 0..n {
                let m = u[(k, j)].abs();
                s += m * m;
            }
            (s.sqrt(), j)
        })
        .collect();
    order.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap().then(x.1.cmp(&y.1)));

    let mut u_sorted = DenseMatrix::zeros(n, n);
    let mut v_sorted = DenseMatrix::zeros(n, n);
    let mut sigma: Vec<T::Real> = Vec::with_capacity(n);
    let mut filled = vec![false; n];
    for (dst, &(s, src)) in order.iter().enumerate() {
        sigma.push(s);
        for k in 0..n {
            v_sorted[(k, dst)] = v[(k, src)];
        }
        if s > T::Real::zero() {
            let inv = T::from_real(T::Real::one() / s);
            for k in 0..n {
                u_sorted[(k, dst)] = u[(k, src)] * inv;
            }
            filled[dst] = true;
        }
    }
    // Zero singular values leave holes in U; fill them with unit vectors
    // orthogonal to the columns already placed.
    for dst in 0..n {
        if filled[dst] {
            continue;
        }
        let mut best: Option<(f64, Vec<T>)> = None;
        for basis in 0..n {
            let mut w = vec![T::zero(); n];
            w[basis] = T::one();
            for _pass in 0..2 {
                for c in 0..n {
                    if !filled[c] {
                        continue;
                    }
                    let mut dot = T::zero();
                    for (row, wr) in w.iter().enumerate() {
                        dot += u_sorted[(row, c)].conj() * *wr;
                    }
                    for (row, wr) in w.iter_mut().enumerate() {
                        let d = dot * u_sorted[(row, c)];
                        *wr -= d;
                    }
                }
            }
            let norm = w
                .iter()
                .fold(0.0f64, |acc, e| acc + e.abs().to_f64() * e.abs().to_f64())
                .sqrt();
            if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
                best = Some((norm, w));
            }
        }
        let (norm, w) = best.expect("order is at least one");
        let inv = T::from_f64(1.0 / norm);
        for (row, wr) in w.iter().enumerate() {
            u_sorted[(row, dst)] = *wr * inv;
        }
        filled[dst] = true;
    }

    let mut us = u_sorted.clone();
    for j in 0..n {
        let s = T::from_real(sigma[j]);
        for i in 0..n {
            us[(i, j)] *= s;
        }
    }
    let residual = dense_sub(a, &dense_mul(&us, &v_sorted.conj_transpose()))
        .max_abs()
        .to_f64();
    certify("svd residual", residual, 1e-12 * max1(a.max_abs().to_f64()))?;
    certify(
        "svd left unitarity",
        identity_distance(&dense_mul(&u_sorted.conj_transpose(), &u_sorted)),
        1e-12,
    )?;
    certify(
        "svd right unitarity",
        identity_distance(&dense_mul(&v_sorted.conj_transpose(), &v_sorted)),
        1e-12,
    )?;
    Ok((u_sorted, sigma, v_sorted))
}

// ---------------------------------------------------------------------------
// Eigenvalues: Hessenberg reduction + shifted QR iteration in complex
// ---------------------------------------------------------------------------

fn quadratic_eigs<C: Scalar>(a: C, b: C, c: C, d: C) -> (C, C) {
    let t = a + d;
    let det = a * d - b * c;
    let disc = t * t - C::from_f64(4.0) * det;
    let s = disc.disc_sqrt().unwrap_or_else(C::zero);
    let half = C::from_f64(0.5);
    ((t + s) * half, (t - s) * half)
}

fn hessenberg<C: Scalar>(h: &mut DenseMatrix<C>) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let mut norm_sq = C::Real::zero();
        for i in k + 1..n {
            let m = h[(i, k)].abs();
            norm_sq += m * m;
        }
        let norm = norm_sq.sqrt();
        if norm == C::Real::zero() {
            continue;
        }
        let alpha = -h[(k + 1, k)].phase_or_one() * C::from_real(norm);
        let mut v: Vec<C> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let mut v_norm_sq = C::Real::zero();
        for e in &v {
            let m = e.abs();
            v_norm_sq += m * m;
        }
        if v_norm_sq == C::Real::zero() {
            continue;
        }
        let inv = C::from_real(C::Real::one() / v_norm_sq.sqrt());
        for e in &mut v {
            *e *= inv;
        }
        let two = C::from_f64(2.0);
        // Reflect from the left: H <- H - 2 v (v^H H) on rows k+1..n.
        for j in 0..n {
            let mut dot = C::zero();
            for (t_idx, i) in (k + 1..n).enumerate() {
                dot += v[t_idx].conj() * h[(i, j)];
            }
            for (t_idx, i) in (k + 1..n).enumerate() {
                let d = two * v[t_idx] * dot;
                h[(i, j)] -= d;
            }
        }
        // Reflect from the right: H <- H - 2 (H v) v^H on columns k+1..n.
        for i in 0..n {
            let mut dot = C::zero();
            for (t_idx, j) in (k + 1..n).enumerate() {
                dot += h[(i, j)] * v[t_idx];
            }
            for (t_idx, j) in (k + 1..n).enumerate() {
                let d = two * dot * v[t_idx].conj();
                h[(i, j)] -= d;
            }
        }
    }
}

fn eig_qr<C: Scalar>(mut h: DenseMatrix<C>) -> Result<Vec<C>> {
    let n = h.rows();
    let mut out: Vec<C> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let eps = C::eps();
    let mut hi = n - 1;
    let mut iters = 0usize;
    let max_iters = 80 * n;
    loop {
        // Find the top of the active block: the first negligible subdiagonal
        // entry at or below row `hi`.
        let mut lo = hi;
        while lo > 0 {
            let off = h[(lo, lo - 1)].abs();
            let local = h[(lo - 1, lo - 1)].abs() + h[(lo, lo)].abs();
            if off <= eps * local {
                h[(lo, lo - 1)] = C::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out.push(h[(hi, hi)]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if lo + 1 == hi {
            let (r1, r2) = quadratic_eigs(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            out.push(r1);
            out.push(r2);
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            continue;
        }
        iters += 1;
        if iters > max_iters {
            return Err(OracleError::ConvergenceFailure(format!(
                "qr eigenvalue iteration cap at block {lo}..{hi}"
            )));
        }
        // Wilkinson shift: the trailing 2x2 eigenvalue closer to the corner.
        let (r1, r2) = quadratic_eigs(
            h[(hi - 1, hi - 1)],
            h[(hi - 1, hi)],
            h[(hi, hi - 1)],
            h[(hi, hi)],
        );
        let corner = h[(hi, hi)];
        let mu = if (r1 - corner).abs() <= (r2 - corner).abs() {
            r1
        } else {
            r2
        };
        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        // Explicit shifted QR step restricted to the active window.
        let mut rots: Vec<(C, C, C)> = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let f = h[(i, i)];
            let g = h[(i + 1, i)];
            let mag = f.abs().hypot(g.abs());
            if mag == C::Real::zero() {
                rots.push((C::one(), C::zero(), C::one()));
                continue;
            }
            let d = C::from_real(mag);
            for j in i..=hi {
                let top = h[(i, j)];
                let bot = h[(i + 1, j)];
                h[(i, j)] = (f.conj() * top + g.conj() * bot) / d;
                h[(i + 1, j)] = (f * bot - g * top) / d;
            }
            rots.push((f, g, d));
        }
        for (i, &(f, g, d)) in rots.iter().enumerate() {
            let col = lo + i;
            for r in lo..=hi {
                let left = h[(r, col)];
                let right = h[(r, col + 1)];
                h[(r, col)] = (left * f + right * g) / d;
                h[(r, col + 1)] = (right * f.conj() - left * g.conj()) / d;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }
    Ok(out)
}

/// Eigenvalues of a square matrix, always reported in the complex extension.
/// Computed by promoting to complex, reducing to Hessenberg form, then
/// running a Wilkinson-shifted QR iteration. Certified against the trace and
/// the pivoted-LU determinant.
pub fn dense_eig<T: Scalar>(a: &DenseMatrix<T>) -> Result<Vec<T::Complex>> {
    assert!(a.is_square(), "eigenvalues need a square matrix");
    let promoted: DenseMatrix<T::Complex> = a.map(|v| v.to_complex());
    let mut h = promoted.clone();
    hessenberg(&mut h);
    let eigs = eig_qr(h)?;

    let mut trace = T::Complex::zero();
    for i in 0..a.rows() {
        trace += promoted[(i, i)];
    }
    let mut sum = T::Complex::zero();
    let mut prod = T::Complex::one();
    let mut abs_sum = 0.0f64;
    let mut abs_prod = 1.0f64;
    for &l in &eigs {
        sum += l;
        prod *= l;
        abs_sum += l.abs().to_f64();
        abs_prod *= l.abs().to_f64();
    }
    certify(
        "eig trace",
        (sum - trace).abs().to_f64(),
        1e-9 * max1(abs_sum),
    )?;
    let det = dense_det(&promoted);
    certify(
        "eig determinant",
        (prod - det).abs().to_f64(),
        1e-7 * max1(abs_prod),
    )?;
    Ok(eigs)
}

// ---------------------------------------------------------------------------
// Matrix exponential: scaling and squaring with a Taylor core
// ---------------------------------------------------------------------------

fn expm_core<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let n = a.rows();
    let norm = a.frobenius_norm().to_f64();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let b = dense_scale(a, T::from_f64(0.5f64.powi(squarings as i32)));
    let mut acc = DenseMatrix::<T>::identity(n);
    let mut term = DenseMatrix::<T>::identity(n);
    let mut converged = false;
    for k in 1..=80u32 {
        term = dense_scale(&dense_mul(&term, &b), T::from_f64(1.0 / f64::from(k)));
        for i in 0..n {
            for j in 0..n {
                let t = term[(i, j)];
                acc[(i, j)] += t;
            }
        }
        if term.max_abs().to_f64() <= 0.25 * f64::EPSILON * max1(acc.max_abs().to_f64()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(OracleError::ConvergenceFailure(
            "taylor series for the exponential did not settle".to_string(),
        ));
    }
    let mut e = acc;
    for _ in 0..squarings {
        e = dense_mul(&e, &e);
    }
    Ok(e)
}

/// Matrix exponential by scaling and squaring over a Taylor core.
/// Certified through the inverse relation `expm(A) * expm(-A) ~ I`.
pub fn dense_expm<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    assert!(a.is_square(), "exponential needs a square matrix");
    let e = expm_core(a)?;
    let back = expm_core(&dense_scale(a, -T::one()))?;
    let residual = identity_distance(&dense_mul(&e, &back));
    let scale = max1(e.max_abs().to_f64() * back.max_abs().to_f64());
    certify("expm inverse relation", residual, 1e-9 * scale)?;
    Ok(e)
}

// ---------------------------------------------------------------------------
// Polar decomposition: Newton iteration on the unitary factor
// ---------------------------------------------------------------------------

/// Polar factors (U, H) with U unitary and H Hermitian positive
/// semidefinite, via the Newton iteration `U <- (U + U^{-*}) / 2`.
/// Requires a nonsingular input. Certified on unitarity and reconstruction.
pub fn dense_polar<T: Scalar>(a: &DenseMatrix<T>) -> Result<(DenseMatrix<T>, DenseMatrix<T>)> {
    assert!(a.is_square(), "polar decomposition needs a square matrix");
    let n = a.rows();
    let half = T::from_f64(0.5);
    let mut u = a.clone();
    let mut settled = false;
    for _ in 0..100 {
        let inv_ct = inverse_core(&u.conj_transpose())?;
        let mut next = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                next[(i, j)] = (u[(i, j)] + inv_ct[(i, j)]) * half;
            }
        }
        let step = next.max_abs_diff(&u).to_f64();
        u = next;
        if step <= 1e-14 * max1(u.max_abs().to_f64()) {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(OracleError::ConvergenceFailure(
            "polar newton iteration did not settle".to_string(),
        ));
    }
    let uh_a = dense_mul(&u.conj_transpose(), a);
    let mut h = DenseMatrix::zeros(n, n);
    let ct = uh_a.conj_transpose();
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] = (uh_a[(i, j)] + ct[(i, j)]) * half;
        }
    }
    certify(
        "polar unitarity",
        identity_distance(&dense_mul(&u.conj_transpose(), &u)),
        1e-10,
    )?;
    let residual = dense_sub(a, &dense_mul(&u, &h)).max_abs().to_f64();
    certify("polar residual", residual, 1e-10 * max1(a.max_abs().to_f64()))?;
    Ok((u, h))
}

// ---------------------------------------------------------------------------
// Eigenvalue multiset matching
// ---------------------------------------------------------------------------

/// Pairs two eigenvalue lists by the assignment minimizing the total
/// distance, then reports the largest matched distance. This is the
/// deterministic way to compare unordered spectra.
pub fn match_eigenvalues(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(OracleError::CertificationFailure(format!(
            "eigenvalue lists have different lengths: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    if n == 0 {
        return Ok(0.0);
    }
    assert!(n <= 22, "bitmask assignment is limited to small orders");
    let full = 1usize << n;
    let cost = |i: usize, j: usize| (a[i] - b[j]).norm();
    // dp[mask] = least total cost assigning the first popcount(mask) entries
    // of `a` to the members of `b` indicated by the mask.
    let mut dp = vec![f64::INFINITY; full];
    dp[0] = 0.0;
    for mask in 0..full {
        if !dp[mask].is_finite() {
            continue;
        }
        let i = mask.count_ones() as usize;
        if i >= n {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) == 0 {
                let next = mask | (1 << j);
                let c = dp[mask] + cost(i, j);
                if c < dp[next] {
                    dp[next] = c;
                }
            }
        }
    }
    // Walk the optimal assignment backwards to find its largest edge.
    let mut mask = full - 1;
    let mut worst = 0.0f64;
    for i in (0..n).rev() {
        let mut pick = None;
        for j in 0..n {
            if mask & (1 << j) != 0 {
                let total = dp[mask ^ (1 << j)] + cost(i, j);
                if pick.is_none_or(|(best, _)| total < best) {
                    pick = Some((total, j));
                }
            }
        }
        let (_, j) = pick.expect("mask has a set bit per remaining row");
        worst = worst.max(cost(i, j));
        mask ^= 1 << j;
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, data: &[f64]) -> DenseMatrix<f64> {
        DenseMatrix::from_vec(rows, cols, data.to_vec()).unwrap()
    }

    #[test]
    fn det_of_identity_is_one() {
        assert_eq!(dense_det(&DenseMatrix::<f64>::identity(3)), 1.0);
    }

    #[test]
    fn det_of_cross_example() {
        let a = m(3, 3, &[1.0, 0.0, 4.0, 0.0, 2.0, 0.0, 5.0, 0.0, 3.0]);
        assert!((dense_det(&a) + 34.0).abs() < 1e-12);
    }

    #[test]
    fn det_of_rank_deficient_is_zero() {
        let a = m(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(dense_det(&a), 0.0);
    }

    #[test]
    fn solve_against_identity_returns_rhs() {
        let b = vec![3.0, -1.5, 0.25];
        let x = dense_solve(&DenseMatrix::identity(3), &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_two_by_two() {
        let a = m(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let x = dense_solve(&a, &[5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn solve_singular_reports_error() {
        let a = m(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(dense_solve(&a, &[1.0, 2.0]), Err(OracleError::Singular));
    }

    #[test]
    fn inverse_of_diagonal() {
        let a = m(2, 2, &[2.0, 0.0, 0.0, 4.0]);
        let inv = dense_inverse(&a).unwrap();
        assert!((inv[(0, 0)] - 0.5).abs() < 1e-15);
        assert!((inv[(1, 1)] - 0.25).abs() < 1e-15);
        assert_eq!(inv[(0, 1)], 0.0);
    }

    #[test]
    fn qr_produces_upper_triangular_r() {
        let a = m(3, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 10.0]);
        let (_q, r) = dense_qr(&a).unwrap();
        for i in 0..3 {
            for j in 0..i {
                assert!(r[(i, j)].abs() < 1e-13, "r[{i}][{j}] = {}", r[(i, j)]);
            }
        }
    }

    #[test]
    fn svd_of_diagonal_sorts_values() {
        let a = m(2, 2, &[3.0, 0.0, 0.0, 2.0]);
        let (_u, s, _v) = dense_svd(&a).unwrap();
        assert!((s[0] - 3.0).abs() < 1e-13);
        assert!((s[1] - 2.0).abs() < 1e-13);
    }

    #[test]
    fn svd_of_zero_matrix_completes_a_basis() {
        let a = DenseMatrix::<f64>::zeros(3, 3);
        let (u, s, v) = dense_svd(&a).unwrap();
        assert_eq!(s, vec![0.0, 0.0, 0.0]);
        assert!(identity_distance(&dense_mul(&u.conj_transpose(), &u)) < 1e-14);
        assert!(identity_distance(&dense_mul(&v.conj_transpose(), &v)) < 1e-14);
    }

    #[test]
    fn eig_of_triangular_reads_the_diagonal() {
        let a = m(2, 2, &[1.0, 2.0, 0.0, 3.0]);
        let mut eigs = dense_eig(&a).unwrap();
        eigs.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        assert!((eigs[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((eigs[1] - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eig_of_rotation_is_conjugate_pair() {
        let a = m(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let eigs = dense_eig(&a).unwrap();
        let expect = [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];
        assert!(match_eigenvalues(&eigs, &expect).unwrap() < 1e-12);
    }

    #[test]
    fn eig_of_order_four_exchange() {
        let a = m(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0,
            ],
        );
        let eigs = dense_eig(&a).unwrap();
        let expect = [
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ];
        assert!(match_eigenvalues(&eigs, &expect).unwrap() < 1e-10);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let e = dense_expm(&DenseMatrix::<f64>::zeros(3, 3)).unwrap();
        assert!(identity_distance(&e) < 1e-15);
    }

    #[test]
    fn expm_of_diagonal_logs() {
        let a = m(2, 2, &[2.0f64.ln(), 0.0, 0.0, 3.0f64.ln()]);
        let e = dense_expm(&a).unwrap();
        assert!((e[(0, 0)] - 2.0).abs() < 1e-12);
        assert!((e[(1, 1)] - 3.0).abs() < 1e-12);
        assert!(e[(0, 1)].abs() < 1e-14);
    }

    #[test]
    fn expm_of_nilpotent_block() {
        let a = m(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let e = dense_expm(&a).unwrap();
        assert!((e[(0, 0)] - 1.0).abs() < 1e-14);
        assert!((e[(0, 1)] - 1.0).abs() < 1e-14);
        assert!(e[(1, 0)].abs() < 1e-14);
    }

    #[test]
    fn polar_of_a_rotation_is_the_rotation() {
        let th = 0.7f64;
        let a = m(2, 2, &[th.cos(), -th.sin(), th.sin(), th.cos()]);
        let (u, h) = dense_polar(&a).unwrap();
        assert!(u.max_abs_diff(&a).to_f64() < 1e-12);
        assert!(identity_distance(&h) < 1e-12);
    }

    #[test]
    fn matching_is_zero_on_permuted_lists() {
        let a = [
            Complex64::new(1.0, 2.0),
            Complex64::new(-3.0, 0.5),
            Complex64::new(0.0, -1.0),
        ];
        let b = [a[2], a[0], a[1]];
        assert_eq!(match_eigenvalues(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn matching_reports_the_worst_pair() {
        let a = [Complex64::new(0.0, 0.0), Complex64::new(10.0, 0.0)];
        let b = [Complex64::new(10.0, 0.0), Complex64::new(0.5, 0.0)];
        let worst = match_eigenvalues(&a, &b).unwrap();
        assert!((worst - 0.5).abs() < 1e-15);
    }

    #[test]
    fn matching_rejects_length_mismatch() {
        let a = [Complex64::new(1.0, 0.0)];
        assert!(match_eigenvalues(&a, &[]).is_err());
    }

    #[test]
    fn complex_qr_and_eig_agree_on_a_small_case() {
        let a = DenseMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(1.0, 1.0),
                Complex64::new(0.0, -2.0),
                Complex64::new(3.0, 0.0),
                Complex64::new(-1.0, 0.5),
            ],
        )
        .unwrap();
        let (q, r) = dense_qr(&a).unwrap();
        assert!(dense_sub(&a, &dense_mul(&q, &r)).max_abs() < 1e-13);
        let eigs = dense_eig(&a).unwrap();
        let sum: Complex64 = eigs.iter().sum();
        let trace = a[(0, 0)] + a[(1, 1)];
        assert!((sum - trace).norm() < 1e-12);
    }
}
