//! Analytic matrix functions. `f(X)` is computed through the
//! block-diagonal form: each 2x2 block is handled by two-point Lagrange
//! interpolation on its eigenvalues, switching to a first-order confluent
//! formula when the eigenvalues nearly coincide, and the center maps through
//! `f` directly. O(n) per call.

use num_traits::One;
use crate::block::Block2;
use crate::cross::CrossMatrix;
use crate::error::{CrossError, Result};
use crate::linalg::quadratic_roots;
use crate::scalar::{RealScalar, Scalar};
use std::fmt;

/// A scalar function with an optional derivative, applied to matrices via
/// [`CrossMatrix::apply`]. The derivative is consulted only for blocks whose
/// eigenvalues (numerically) coincide.
pub struct ScalarFunction<T> {
    name: String,
    f: Box<dyn Fn(T) -> T + Send + Sync>,
    df: Option<Box<dyn Fn(T) -> T + Send + Sync>>,
}

impl<T> fmt::Debug for ScalarFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("name", &self.name)
            .field("has_derivative", &self.df.is_some())
            .finish()
    }
}

impl<T: Scalar> ScalarFunction<T> {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        ScalarFunction {
            name: name.into(),
            f: Box::new(f),
            df: None,
        }
    }

    pub fn with_derivative(
        name: impl Into<String>,
        f: impl Fn(T) -> T + Send + Sync + 'static,
        df: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        ScalarFunction {
            name: name.into(),
            f: Box::new(f),
            df: Some(Box::new(df)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: T) -> T {
        (self.f)(x)
    }

    pub fn derivative_at(&self, x: T) -> Option<T> {
        self.df.as_ref().map(|df| df(x))
    }

    pub fn has_derivative(&self) -> bool {
        self.df.is_some()
    }
}

/// The exponential, with itself as derivative.
pub fn exp_function<T: Scalar>() -> ScalarFunction<T> {
    ScalarFunction::with_derivative("exp", |x: T| x.exp(), |x: T| x.exp())
}

/// The principal logarithm; undefined at zero (and on the negative axis for
/// real scalars), which surfaces as a domain error.
pub fn log_function<T: Scalar>() -> ScalarFunction<T> {
    ScalarFunction::with_derivative("log", |x: T| x.ln(), |x: T| T::one() / x)
}

/// The principal square root.
pub fn sqrt_function<T: Scalar>() -> ScalarFunction<T> {
    ScalarFunction::with_derivative("sqrt", |x: T| x.sqrt(), |x: T| {
        T::one() / (T::from_f64(2.0) * x.sqrt())
    })
}

/// The real power `x^p` through the principal branch.
pub fn pow_function<T: Scalar>(p: T::Real) -> ScalarFunction<T> {
    ScalarFunction::with_derivative(
        format!("pow({})", p.to_f64()),
        move |x: T| x.powf(p),
        move |x: T| T::from_real(p) * x.powf(p - T::Real::one()),
    )
}

fn eval_checked<T: Scalar>(g: &ScalarFunction<T>, x: T) -> Result<T> {
    let v = g.eval(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CrossError::DomainError {
            function: g.name().to_string(),
            point: x.fmt_token(),
        })
    }
}

/// `f` of one 2x2 block. `pair` is the 0-based pair the block came from,
/// used only for diagnostics.
fn function_block<T: Scalar>(
    b: &Block2<T>,
    g: &ScalarFunction<T>,
    pair: usize,
) -> Result<Block2<T>> {
    let (l1, l2) = quadratic_roots(b.trace(), b.det())
        .ok_or(CrossError::NeedsComplex { pair: pair + 1 })?;
    let theta = T::eps().sqrt() * b.frobenius_norm();
    if (l1 - l2).abs() > theta {
        let f1 = eval_checked(g, l1)?;
        let f2 = eval_checked(g, l2)?;
        let den = l1 - l2;
        return Ok(Block2::new(
            (f1 * (b.a - l2) - f2 * (b.a - l1)) / den,
            (f1 * b.b - f2 * b.b) / den,
            (f1 * b.c - f2 * b.c) / den,
            (f1 * (b.d - l2) - f2 * (b.d - l1)) / den,
        ));
    }
    let mu = (l1 + l2) / T::from_f64(2.0);
    let fm = eval_checked(g, mu)?;
    let ea = b.a - mu;
    let ed = b.d - mu;
    if ea == T::zero() && ed == T::zero() && b.b == T::zero() && b.c == T::zero() {
        // Exactly a scalar block; no derivative needed.
        return Ok(Block2::new(fm, T::zero(), T::zero(), fm));
    }
    let dfm = g
        .derivative_at(mu)
        .ok_or_else(|| CrossError::DerivativeRequired {
            function: g.name().to_string(),
        })?;
    if !dfm.is_finite() {
        return Err(CrossError::DomainError {
            function: g.name().to_string(),
            point: mu.fmt_token(),
        });
    }
    Ok(Block2::new(
        fm + dfm * ea,
        dfm * b.b,
        dfm * b.c,
        fm + dfm * ed,
    ))
}

impl<T: Scalar> CrossMatrix<T> {
    /// Apply a scalar function to the matrix: block-diagonalize, map every
    /// 2x2 block and the center through `g`, and undo the permutation.
    ///
    /// Fails with [`CrossError::DomainError`] when `g` is not finite at an
    /// eigenvalue, [`CrossError::DerivativeRequired`] when a confluent block
    /// needs a derivative `g` does not carry, and
    /// [`CrossError::NeedsComplex`] when a real scalar type cannot represent
    /// a pair's complex spectrum.
    pub fn apply(&self, g: &ScalarFunction<T>) -> Result<CrossMatrix<T>> {
        let n = self.order();
        let m = n / 4;
        let mut form = self.block_diagonalize();
        for j in 0..form.b_blocks.len() {
            form.b_blocks[j] = function_block(&form.b_blocks[j], g, 2 * j)?;
        }
        if let Some(mb) = form.mid_block.take() {
            form.mid_block = Some(function_block(&mb, g, n / 2 - 1)?);
        }
        for j in 0..form.c_blocks.len() {
            form.c_blocks[j] = function_block(&form.c_blocks[j], g, 2 * (m - j) - 1)?;
        }
        if let Some(c) = form.center {
            form.center = Some(eval_checked(g, c)?);
        }
        form.reconstruct()
    }

    /// Matrix exponential.
    pub fn expm(&self) -> Result<Self> {
        self.apply(&exp_function())
    }

    /// Principal matrix logarithm.
    pub fn logm(&self) -> Result<Self> {
        self.apply(&log_function())
    }

    /// Principal matrix square root.
    pub fn sqrtm(&self) -> Result<Self> {
        self.apply(&sqrt_function())
    }

    /// Principal matrix power with a real exponent.
    pub fn powm(&self, p: T::Real) -> Result<Self> {
        self.apply(&pow_function(p))
    }

    /// Nonnegative integer matrix power by repeated squaring; `X^0` is the
    /// identity.
    pub fn power(&self, mut m: u64) -> Self {
        let mut result = CrossMatrix::identity(self.order());
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = result.mul(&base).expect("orders agree");
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base).expect("orders agree");
            }
        }
        result
    }
}
