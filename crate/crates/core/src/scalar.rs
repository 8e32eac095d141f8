//! Scalar abstractions.
//!
//! [`Real`] is the base floating-point type the whole crate is generic
//! over (`f32` or `f64`). [`GeomScalar`] extends it to "scalar-like"
//! values so that the same geometric code can run on plain numbers and
//! on jets; branch decisions (pivot skipping, sign choices) are always
//! taken on the base value.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, FromPrimitive, Zero};

/// Base floating-point scalar.
pub trait Real: Float + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` constant into `Self`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Field-like values with the elementary functions geometry needs.
///
/// Implemented by every [`Real`] and by [`crate::numkit::Jet`]. Code
/// written against this trait (inner products, frame construction,
/// envelope formulas) computes exact derivatives for free when
/// instantiated with jets.
pub trait GeomScalar:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Base: Real;

    /// The value part (zeroth-order coefficient).
    fn base(&self) -> Self::Base;

    /// A constant of the same shape as `self`.
    fn lift(&self, x: Self::Base) -> Self;

    /// Square root. Callers must guard `base() > 0`; a non-positive base
    /// propagates NaN exactly like `f64::sqrt`.
    fn sqrt_pos(&self) -> Self;

    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;

    /// Absolute value, branching on the base value.
    fn abs_val(&self) -> Self {
        if self.base() < Self::Base::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl<T: Real> GeomScalar for T {
    type Base = T;

    fn base(&self) -> T {
        *self
    }

    fn lift(&self, x: T) -> T {
        x
    }

    fn sqrt_pos(&self) -> T {
        Float::sqrt(*self)
    }

    fn sin(&self) -> T {
        Float::sin(*self)
    }

    fn cos(&self) -> T {
        Float::cos(*self)
    }

    fn sinh(&self) -> T {
        Float::sinh(*self)
    }

    fn cosh(&self) -> T {
        Float::cosh(*self)
    }
}
