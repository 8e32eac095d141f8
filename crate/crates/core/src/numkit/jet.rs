//! Dense multivariate jets truncated at order three.
//!
//! A jet carries a value together with the full symmetric tensors of
//! first, second and third partial derivatives with respect to a fixed
//! number of variables. Arithmetic is exact truncation: there is no
//! numerical differentiation error anywhere in a jet pipeline.
//!
//! Storage is packed over unique index combinations, so a jet in `v`
//! variables holds exactly `C(v+3, 3)` coefficients.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::numkit::taylor1::Taylor1;
use crate::numkit::DomainError;
use crate::scalar::{GeomScalar, Real};

/// Truncation order of every jet in this crate.
pub const JET_ORDER: usize = 3;

#[inline]
fn idx2(i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    j * (j + 1) / 2 + i
}

#[inline]
fn idx3(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i <= j && j <= k);
    k * (k + 1) * (k + 2) / 6 + j * (j + 1) / 2 + i
}

fn len2(v: usize) -> usize {
    v * (v + 1) / 2
}

fn len3(v: usize) -> usize {
    v * (v + 1) * (v + 2) / 6
}

fn sort2(i: usize, j: usize) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

fn sort3(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let (a, b) = sort2(i, j);
    if k >= b {
        (a, b, k)
    } else if k >= a {
        (a, k, b)
    } else {
        (k, a, b)
    }
}

/// Truncated Taylor expansion of a scalar function of `vars` variables,
/// exact through order three.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T> {
    vars: usize,
    value: T,
    d1: Vec<T>,
    d2: Vec<T>,
    d3: Vec<T>,
}

impl<T: Real> Jet<T> {
    pub fn constant(vars: usize, value: T) -> Self {
        Self {
            vars,
            value,
            d1: vec![T::zero(); vars],
            d2: vec![T::zero(); len2(vars)],
            d3: vec![T::zero(); len3(vars)],
        }
    }

    /// The coordinate function of variable `axis`, evaluated at `value`.
    pub fn variable(vars: usize, axis: usize, value: T) -> Self {
        assert!(axis < vars, "variable axis out of range");
        let mut j = Self::constant(vars, value);
        j.d1[axis] = T::one();
        j
    }

    /// Embeds univariate derivative data as a function of variable `axis`.
    ///
    /// `derivs` holds the function value and its first three derivatives
    /// with respect to the underlying curve parameter.
    pub fn from_univariate(vars: usize, axis: usize, derivs: [T; 4]) -> Self {
        assert!(axis < vars);
        let mut j = Self::constant(vars, derivs[0]);
        j.d1[axis] = derivs[1];
        j.d2[idx2(axis, axis)] = derivs[2];
        j.d3[idx3(axis, axis, axis)] = derivs[3];
        j
    }

    /// Embeds a profile series; `shift = 1` embeds the derivative function.
    pub fn from_taylor1(t: &Taylor1<T>, vars: usize, axis: usize, shift: usize) -> Self {
        assert!(shift <= 1, "only the function and its first derivative embed exactly");
        Self::from_univariate(
            vars,
            axis,
            [
                t.derivative(shift),
                t.derivative(shift + 1),
                t.derivative(shift + 2),
                t.derivative(shift + 3),
            ],
        )
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn value(&self) -> T {
        self.value
    }

    /// First partial `∂f/∂u_i`.
    pub fn deriv1(&self, i: usize) -> T {
        self.d1[i]
    }

    /// Second partial `∂²f/∂u_i∂u_j`.
    pub fn deriv2(&self, i: usize, j: usize) -> T {
        let (i, j) = sort2(i, j);
        self.d2[idx2(i, j)]
    }

    /// Third partial `∂³f/∂u_i∂u_j∂u_k`.
    pub fn deriv3(&self, i: usize, j: usize, k: usize) -> T {
        let (i, j, k) = sort3(i, j, k);
        self.d3[idx3(i, j, k)]
    }

    /// Number of stored coefficients, `C(vars + 3, 3)`.
    pub fn coeff_count(&self) -> usize {
        1 + self.vars + len2(self.vars) + len3(self.vars)
    }

    /// Taylor coefficient of the multi-index `alpha` (degree ≤ 3):
    /// the matching partial derivative divided by `alpha!`.
    pub fn coeff(&self, alpha: &[usize]) -> T {
        assert_eq!(alpha.len(), self.vars);
        let mut axes = Vec::new();
        let mut fact = T::one();
        for (axis, &m) in alpha.iter().enumerate() {
            for r in 0..m {
                axes.push(axis);
                fact = fact * T::of((r + 1) as f64);
            }
        }
        let d = match axes.len() {
            0 => self.value,
            1 => self.deriv1(axes[0]),
            2 => self.deriv2(axes[0], axes[1]),
            3 => self.deriv3(axes[0], axes[1], axes[2]),
            _ => panic!("multi-index degree exceeds jet order"),
        };
        d / fact
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = self.clone();
        out.value = out.value * s;
        for x in &mut out.d1 {
            *x = *x * s;
        }
        for x in &mut out.d2 {
            *x = *x * s;
        }
        for x in &mut out.d3 {
            *x = *x * s;
        }
        out
    }

    fn zip(&self, rhs: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!(self.vars, rhs.vars, "jet variable counts differ");
        Self {
            vars: self.vars,
            value: f(self.value, rhs.value),
            d1: self.d1.iter().zip(&rhs.d1).map(|(&a, &b)| f(a, b)).collect(),
            d2: self.d2.iter().zip(&rhs.d2).map(|(&a, &b)| f(a, b)).collect(),
            d3: self.d3.iter().zip(&rhs.d3).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        assert_eq!(self.vars, rhs.vars, "jet variable counts differ");
        let v = self.vars;
        let mut out = Self::constant(v, self.value * rhs.value);
        for i in 0..v {
            out.d1[i] = self.d1[i] * rhs.value + self.value * rhs.d1[i];
        }
        for j in 0..v {
            for i in 0..=j {
                out.d2[idx2(i, j)] = self.deriv2(i, j) * rhs.value
                    + self.d1[i] * rhs.d1[j]
                    + self.d1[j] * rhs.d1[i]
                    + self.value * rhs.deriv2(i, j);
            }
        }
        for k in 0..v {
            for j in 0..=k {
                for i in 0..=j {
                    out.d3[idx3(i, j, k)] = self.deriv3(i, j, k) * rhs.value
                        + self.value * rhs.deriv3(i, j, k)
                        + self.deriv2(i, j) * rhs.d1[k]
                        + self.deriv2(i, k) * rhs.d1[j]
                        + self.deriv2(j, k) * rhs.d1[i]
                        + self.d1[i] * rhs.deriv2(j, k)
                        + self.d1[j] * rhs.deriv2(i, k)
                        + self.d1[k] * rhs.deriv2(i, j);
                }
            }
        }
        out
    }

    /// Chain rule for a univariate outer function with derivative values
    /// `f = (f(u), f'(u), f''(u), f'''(u))` at `u = self.value()`.
    pub fn compose(&self, f: [T; 4]) -> Self {
        let v = self.vars;
        let mut out = Self::constant(v, f[0]);
        for i in 0..v {
            out.d1[i] = f[1] * self.d1[i];
        }
        for j in 0..v {
            for i in 0..=j {
                out.d2[idx2(i, j)] =
                    f[2] * self.d1[i] * self.d1[j] + f[1] * self.deriv2(i, j);
            }
        }
        for k in 0..v {
            for j in 0..=k {
                for i in 0..=j {
                    out.d3[idx3(i, j, k)] = f[3] * self.d1[i] * self.d1[j] * self.d1[k]
                        + f[2]
                            * (self.deriv2(i, j) * self.d1[k]
                                + self.deriv2(i, k) * self.d1[j]
                                + self.deriv2(j, k) * self.d1[i])
                        + f[1] * self.deriv3(i, j, k);
                }
            }
        }
        out
    }

    pub fn sin(&self) -> Self {
        let (s, c) = (self.value.sin(), self.value.cos());
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = (self.value.sin(), self.value.cos());
        self.compose([c, -s, -c, s])
    }

    pub fn sinh(&self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.compose([s, c, s, c])
    }

    pub fn cosh(&self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.compose([c, s, c, s])
    }

    pub fn exp(&self) -> Self {
        let e = self.value.exp();
        self.compose([e, e, e, e])
    }

    pub fn ln(&self) -> Result<Self, DomainError> {
        if self.value <= T::zero() {
            return Err(DomainError::LogNonPositive);
        }
        let r = self.value.recip();
        Ok(self.compose([self.value.ln(), r, -r * r, T::of(2.0) * r * r * r]))
    }

    pub fn sqrt(&self) -> Result<Self, DomainError> {
        if self.value <= T::zero() {
            return Err(DomainError::SqrtNonPositive);
        }
        Ok(self.sqrt_unchecked())
    }

    fn sqrt_unchecked(&self) -> Self {
        let s = self.value.sqrt();
        let r = self.value.recip();
        self.compose([
            s,
            T::of(0.5) * s * r,
            T::of(-0.25) * s * r * r,
            T::of(0.375) * s * r * r * r,
        ])
    }

    pub fn recip(&self) -> Result<Self, DomainError> {
        if self.value.is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    fn recip_unchecked(&self) -> Self {
        let r = self.value.recip();
        let r2 = r * r;
        self.compose([r, -r2, T::of(2.0) * r2 * r, T::of(-6.0) * r2 * r2])
    }

    /// Jet of the partial derivative along `axis`. The result is exact
    /// through order two; third-order slots are truncated to zero.
    pub fn differentiate(&self, axis: usize) -> Self {
        let v = self.vars;
        let mut out = Self::constant(v, self.d1[axis]);
        for i in 0..v {
            out.d1[i] = self.deriv2(axis, i);
        }
        for j in 0..v {
            for i in 0..=j {
                out.d2[idx2(i, j)] = self.deriv3(axis, i, j);
            }
        }
        out
    }

    pub fn powi(&self, n: i64) -> Result<Self, DomainError> {
        if n == 0 {
            return Ok(Self::constant(self.vars, T::one()));
        }
        let mut base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::constant(self.vars, T::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            base = base.mul_impl(&base);
            e >>= 1;
        }
        Ok(acc)
    }
}

macro_rules! jet_binop {
    ($trait:ident, $method:ident, $impl:expr) => {
        impl<T: Real> $trait for Jet<T> {
            type Output = Jet<T>;
            fn $method(self, rhs: Jet<T>) -> Jet<T> {
                $impl(&self, &rhs)
            }
        }
        impl<'a, T: Real> $trait<&'a Jet<T>> for &'a Jet<T> {
            type Output = Jet<T>;
            fn $method(self, rhs: &'a Jet<T>) -> Jet<T> {
                $impl(self, rhs)
            }
        }
    };
}

jet_binop!(Add, add, |a: &Jet<T>, b: &Jet<T>| a.zip(b, |x, y| x + y));
jet_binop!(Sub, sub, |a: &Jet<T>, b: &Jet<T>| a.zip(b, |x, y| x - y));
jet_binop!(Mul, mul, |a: &Jet<T>, b: &Jet<T>| a.mul_impl(b));
jet_binop!(Div, div, |a: &Jet<T>, b: &Jet<T>| a.mul_impl(
    &b.recip_unchecked()
));

impl<T: Real> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        self.scale(-T::one())
    }
}

impl<'a, T: Real> Neg for &'a Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        self.scale(-T::one())
    }
}

impl<T: Real> GeomScalar for Jet<T> {
    type Base = T;

    fn base(&self) -> T {
        self.value
    }

    fn lift(&self, x: T) -> Self {
        Jet::constant(self.vars, x)
    }

    fn sqrt_pos(&self) -> Self {
        self.sqrt_unchecked()
    }

    fn sin(&self) -> Self {
        Jet::sin(self)
    }

    fn cos(&self) -> Self {
        Jet::cos(self)
    }

    fn sinh(&self) -> Self {
        Jet::sinh(self)
    }

    fn cosh(&self) -> Self {
        Jet::cosh(self)
    }
}
