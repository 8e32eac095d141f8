//! Univariate truncated Taylor series to degree four.
//!
//! Radius and center-curve profiles are evaluated on these series. Four
//! derivative levels are kept because an order-three chart jet involves
//! both a profile and its first derivative as factors, so the profile
//! itself must be known one order deeper.

use crate::numkit::DomainError;
use crate::scalar::Real;

/// Number of stored coefficients (degree 4 inclusive).
pub const TAYLOR1_LEN: usize = 5;

/// Truncated Taylor expansion `c0 + c1 h + c2 h² + c3 h³ + c4 h⁴` of a
/// univariate function around a fixed base point.
#[derive(Clone, Debug, PartialEq)]
pub struct Taylor1<T> {
    c: [T; TAYLOR1_LEN],
}

impl<T: Real> Taylor1<T> {
    pub fn constant(x: T) -> Self {
        let mut c = [T::zero(); TAYLOR1_LEN];
        c[0] = x;
        Self { c }
    }

    /// The identity function `s ↦ s` expanded at `s0`.
    pub fn variable(s0: T) -> Self {
        let mut c = [T::zero(); TAYLOR1_LEN];
        c[0] = s0;
        c[1] = T::one();
        Self { c }
    }

    pub fn from_coeffs(c: [T; TAYLOR1_LEN]) -> Self {
        Self { c }
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c[k]
    }

    pub fn value(&self) -> T {
        self.c[0]
    }

    /// The `k`-th derivative value, `k! · c_k`.
    pub fn derivative(&self, k: usize) -> T {
        let mut fact = T::one();
        for m in 2..=k {
            fact = fact * T::of(m as f64);
        }
        self.c[k] * fact
    }

    pub fn neg(&self) -> Self {
        let mut c = self.c;
        for x in &mut c {
            *x = -*x;
        }
        Self { c }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(rhs.c.iter()) {
            *x = *x + *y;
        }
        Self { c }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(rhs.c.iter()) {
            *x = *x - *y;
        }
        Self { c }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut c = [T::zero(); TAYLOR1_LEN];
        for i in 0..TAYLOR1_LEN {
            for j in 0..TAYLOR1_LEN - i {
                c[i + j] = c[i + j] + self.c[i] * rhs.c[j];
            }
        }
        Self { c }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, DomainError> {
        if rhs.c[0].is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        let mut q = [T::zero(); TAYLOR1_LEN];
        for k in 0..TAYLOR1_LEN {
            let mut acc = self.c[k];
            for j in 0..k {
                acc = acc - q[j] * rhs.c[k - j];
            }
            q[k] = acc / rhs.c[0];
        }
        Ok(Self { c: q })
    }

    /// Composes a smooth function with this series given the outer
    /// function's derivative values at `self.value()`.
    fn compose(&self, derivs: [T; TAYLOR1_LEN]) -> Self {
        // Taylor coefficients of the outer function.
        let d = [
            derivs[0],
            derivs[1],
            derivs[2] / T::of(2.0),
            derivs[3] / T::of(6.0),
            derivs[4] / T::of(24.0),
        ];
        // Horner evaluation in w = self - value (w has zero constant term).
        let mut w = *self;
        w.c[0] = T::zero();
        let mut acc = Self::constant(d[TAYLOR1_LEN - 1]);
        for k in (0..TAYLOR1_LEN - 1).rev() {
            acc = acc.mul(&w);
            acc.c[0] = acc.c[0] + d[k];
        }
        acc
    }

    pub fn sin(&self) -> Self {
        let (s, c) = (self.c[0].sin(), self.c[0].cos());
        self.compose([s, c, -s, -c, s])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = (self.c[0].sin(), self.c[0].cos());
        self.compose([c, -s, -c, s, c])
    }

    pub fn sinh(&self) -> Self {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.compose([s, c, s, c, s])
    }

    pub fn cosh(&self) -> Self {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.compose([c, s, c, s, c])
    }

    pub fn exp(&self) -> Self {
        let e = self.c[0].exp();
        self.compose([e; TAYLOR1_LEN])
    }

    pub fn ln(&self) -> Result<Self, DomainError> {
        let v = self.c[0];
        if v <= T::zero() {
            return Err(DomainError::LogNonPositive);
        }
        let r = v.recip();
        let r2 = r * r;
        Ok(self.compose([
            v.ln(),
            r,
            -r2,
            T::of(2.0) * r2 * r,
            -T::of(6.0) * r2 * r2,
        ]))
    }

    pub fn sqrt(&self) -> Result<Self, DomainError> {
        let v = self.c[0];
        if v <= T::zero() {
            return Err(DomainError::SqrtNonPositive);
        }
        let s = v.sqrt();
        let r = v.recip();
        Ok(self.compose([
            s,
            T::of(0.5) * s * r,
            T::of(-0.25) * s * r * r,
            T::of(0.375) * s * r * r * r,
            T::of(-0.9375) * s * r * r * r * r,
        ]))
    }

    pub fn recip(&self) -> Result<Self, DomainError> {
        Self::constant(T::one()).div(self)
    }

    pub fn powi(&self, n: i64) -> Result<Self, DomainError> {
        if n == 0 {
            return Ok(Self::constant(T::one()));
        }
        let mut base = if n < 0 { self.recip()? } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::constant(T::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// General power, rewritten as `exp(e · ln b)`; requires a positive base.
    pub fn powf(&self, expo: &Self) -> Result<Self, DomainError> {
        if self.c[0] <= T::zero() {
            return Err(DomainError::PowBaseNonPositive);
        }
        Ok(self.ln()?.mul(expo).exp())
    }
}

impl<T: Real> Copy for Taylor1<T> {}
