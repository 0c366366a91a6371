//! 2x2 blocks. Every pair of symmetric cross positions condenses to one of
//! these, and all per-pair closed forms are phrased on them.

use num_traits::Zero;
use crate::scalar::{RealScalar, Scalar};

/// A 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Block2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Block2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Block2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Block2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> T {
        self.a + self.d
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Block2::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Block2::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c, self.d + rhs.d)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Block2::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c, self.d - rhs.d)
    }

    pub fn scale(&self, s: T) -> Self {
        Block2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn transpose(&self) -> Self {
        Block2::new(self.a, self.c, self.b, self.d)
    }

    pub fn conj_transpose(&self) -> Self {
        Block2::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn apply(&self, v: (T, T)) -> (T, T) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }

    pub fn max_abs(&self) -> T::Real {
        let m = RealScalar::max(self.a.abs(), self.b.abs());
        let m = RealScalar::max(m, self.c.abs());
        RealScalar::max(m, self.d.abs())
    }

    pub fn frobenius_norm(&self) -> T::Real {
        let mut s = T::Real::zero();
        for v in [self.a, self.b, self.c, self.d] {
            s += v.abs() * v.abs();
        }
        s.sqrt()
    }
}
