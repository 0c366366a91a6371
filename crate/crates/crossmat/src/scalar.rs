//! Scalar abstraction shared by every algorithm in this crate.
//!
//! All structured routines are generic over [`Scalar`], which is implemented
//! for `f64` and [`Complex64`]. The trait exposes exactly the operations the
//! closed-form cross-matrix algorithms need: conjugation, magnitude, a few
//! analytic functions, and text round-tripping for the `xmat` file format.

use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};

/// A real or complex floating-point field element.
pub trait Scalar:
    Copy
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Send
    + Sync
    + 'static
{
    /// The underlying real type (`f64` for both supported scalars).
    type Real: RealScalar<Real = Self::Real, Complex = Self::Complex>;
    /// The complex extension (`Complex64` for both supported scalars).
    type Complex: Scalar<Real = Self::Real, Complex = Self::Complex>;

    /// Whether this type can represent non-real values.
    const IS_COMPLEX: bool;

    fn from_real(r: Self::Real) -> Self;
    fn from_f64(v: f64) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    fn conj(self) -> Self;
    /// Modulus |x|.
    fn abs(self) -> Self::Real;
    fn to_complex(self) -> Self::Complex;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn powf(self, p: Self::Real) -> Self;
    fn is_finite(self) -> bool;

    /// Square root of a quadratic discriminant, or `None` when the value has
    /// no square root in this type (a negative real). Complex scalars always
    /// succeed; this is what decides when real eigenvalue extraction must ask
    /// the caller to move to `Complex64`.
    fn disc_sqrt(self) -> Option<Self>;

    /// x / |x|, defaulting to 1 at x = 0. Always has modulus exactly 1.
    fn phase_or_one(self) -> Self;

    /// Machine epsilon of the underlying real type.
    fn eps() -> Self::Real;

    /// Canonical text form used by the `xmat` format. Shortest representation
    /// that round-trips bit-exactly through [`Scalar::parse_token`].
    fn fmt_token(self) -> String;

    /// Parse one whitespace-delimited token. Real scalars reject complex
    /// tokens; complex scalars accept both `a` and `a+bi` / `a-bi` forms.
    fn parse_token(s: &str) -> Option<Self>;
}

/// Scalars that admit a total order on finite values, i.e. the reals.
pub trait RealScalar: Scalar + PartialOrd {
    fn hypot(self, other: Self) -> Self;
    fn max(self, other: Self) -> Self;
    fn to_f64(self) -> f64;
    fn atan2(self, other: Self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
}

impl Scalar for f64 {
    type Real = f64;
    type Complex = Complex64;

    const IS_COMPLEX: bool = false;

    fn from_real(r: f64) -> Self {
        r
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn re(self) -> f64 {
        self
    }

    fn im(self) -> f64 {
        0.0
    }

    fn conj(self) -> Self {
        self
    }

    fn abs(self) -> f64 {
        f64::abs(self)
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn ln(self) -> Self {
        f64::ln(self)
    }

    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn disc_sqrt(self) -> Option<Self> {
        if self < 0.0 {
            None
        } else {
            Some(f64::sqrt(self))
        }
    }

    fn phase_or_one(self) -> Self {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }

    fn eps() -> f64 {
        f64::EPSILON
    }

    fn fmt_token(self) -> String {
        format!("{self}")
    }

    fn parse_token(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl RealScalar for f64 {
    fn hypot(self, other: Self) -> Self {
        f64::hypot(self, other)
    }

    fn max(self, other: Self) -> Self {
        f64::max(self, other)
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn atan2(self, other: Self) -> Self {
        f64::atan2(self, other)
    }

    fn sin(self) -> Self {
        f64::sin(self)
    }

    fn cos(self) -> Self {
        f64::cos(self)
    }
}

impl Scalar for Complex64 {
    type Real = f64;
    type Complex = Complex64;

    const IS_COMPLEX: bool = true;

    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }

    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }

    fn re(self) -> f64 {
        self.re
    }

    fn im(self) -> f64 {
        self.im
    }

    fn conj(self) -> Self {
        Complex64::conj(&self)
    }

    fn abs(self) -> f64 {
        self.norm()
    }

    fn to_complex(self) -> Complex64 {
        self
    }

    fn sqrt(self) -> Self {
        Complex64::sqrt(self)
    }

    fn exp(self) -> Self {
        Complex64::exp(self)
    }

    fn ln(self) -> Self {
        Complex64::ln(self)
    }

    fn powf(self, p: f64) -> Self {
        Complex64::powf(self, p)
    }

    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn disc_sqrt(self) -> Option<Self> {
        Some(Complex64::sqrt(self))
    }

    fn phase_or_one(self) -> Self {
        let m = self.norm();
        if m == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            self / m
        }
    }

    fn eps() -> f64 {
        f64::EPSILON
    }

    fn fmt_token(self) -> String {
        // The imaginary part is suppressed only when it is exactly +0, so
        // that tokens round-trip bit-for-bit (`1-0i` keeps its signed zero).
        if self.im == 0.0 && !self.im.is_sign_negative() {
            format!("{}", self.re)
        } else if self.im.is_sign_negative() {
            format!("{}-{}i", self.re, -self.im)
        } else {
            format!("{}+{}i", self.re, self.im)
        }
    }

    fn parse_token(s: &str) -> Option<Self> {
        if let Some(body) = s.strip_suffix(['i', 'I']) {
            let bytes = body.as_bytes();
            let mut split = None;
            for (idx, &b) in bytes.iter().enumerate().skip(1) {
                if (b == b'+' || b == b'-') && bytes[idx - 1] != b'e' && bytes[idx - 1] != b'E' {
                    split = Some(idx);
                }
            }
            match split {
                Some(idx) => {
                    let re: f64 = body[..idx].parse().ok()?;
                    let im: f64 = match &body[idx..idx + 1] {
                        "+" => body[idx + 1..].parse().ok()?,
                        _ => -body[idx + 1..].parse::<f64>().ok()?,
                    };
                    Some(Complex64::new(re, im))
                }
                None => {
                    let im: f64 = body.parse().ok()?;
                    Some(Complex64::new(0.0, im))
                }
            }
        } else {
            let re: f64 = s.parse().ok()?;
            Some(Complex64::new(re, 0.0))
        }
    }
}
