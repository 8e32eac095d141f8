//! Ambient-space primitives: signatures, vectors and the indefinite
//! inner product.

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::numkit::AmbientError;
use crate::scalar::{GeomScalar, Real};

/// Metric signature of the ambient space.
///
/// Either Euclidean or Lorentzian with the single time axis at index 0,
/// written `(-, +, …, +)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    dim: usize,
    time_axes: Vec<usize>,
}

impl Signature {
    pub fn euclidean(dim: usize) -> Self {
        Self {
            dim,
            time_axes: Vec::new(),
        }
    }

    pub fn minkowski(dim: usize) -> Self {
        assert!(dim >= 2, "a Lorentzian signature needs at least two axes");
        Self {
            dim,
            time_axes: vec![0],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_minkowski(&self) -> bool {
        !self.time_axes.is_empty()
    }

    pub fn time_axes(&self) -> &[usize] {
        &self.time_axes
    }

    /// `-1` on a time axis, `+1` otherwise.
    pub fn axis_sign(&self, axis: usize) -> i8 {
        if self.time_axes.contains(&axis) {
            -1
        } else {
            1
        }
    }

    /// Square of a unit normal to a space-like hypersurface: `-1` in
    /// Minkowski space, `+1` in Euclidean space.
    pub fn normal_square(&self) -> i8 {
        if self.is_minkowski() {
            -1
        } else {
            1
        }
    }
}

/// Point or vector of the ambient space, generic over the scalar kind so
/// that chart code can carry jets through every formula.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientVector<S> {
    pub coords: Vec<S>,
}

impl<S: GeomScalar> AmbientVector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// A zero vector with coordinates shaped like `proto`.
    pub fn zero_like(proto: &S, dim: usize) -> Self {
        Self {
            coords: vec![proto.lift(S::Base::zero()); dim],
        }
    }

    /// Canonical basis vector shaped like `proto`.
    pub fn basis_like(proto: &S, dim: usize, axis: usize) -> Self {
        let mut v = Self::zero_like(proto, dim);
        v.coords[axis] = proto.lift(S::Base::one());
        v
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .map(|c| c.clone() * s.clone())
                .collect(),
        }
    }

    /// Coordinate-wise base values.
    pub fn values(&self) -> AmbientVector<S::Base> {
        AmbientVector {
            coords: self.coords.iter().map(|c| c.base()).collect(),
        }
    }

    /// Sum of squared base values; signature-independent magnitude used
    /// for degeneracy thresholds.
    pub fn euclidean_square(&self) -> S::Base {
        self.coords
            .iter()
            .map(|c| c.base() * c.base())
            .fold(S::Base::zero(), |a, b| a + b)
    }
}

impl<T: Real> AmbientVector<T> {
    pub fn from_f64(coords: &[f64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| T::of(c)).collect(),
        }
    }

    /// Lifts plain coordinates into constants shaped like `proto`.
    pub fn lift_into<S: GeomScalar<Base = T>>(&self, proto: &S) -> AmbientVector<S> {
        AmbientVector {
            coords: self.coords.iter().map(|&c| proto.lift(c)).collect(),
        }
    }
}

impl<S: GeomScalar> Add for &AmbientVector<S> {
    type Output = AmbientVector<S>;
    fn add(self, rhs: &AmbientVector<S>) -> AmbientVector<S> {
        assert_eq!(self.dim(), rhs.dim());
        AmbientVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: GeomScalar> Sub for &AmbientVector<S> {
    type Output = AmbientVector<S>;
    fn sub(self, rhs: &AmbientVector<S>) -> AmbientVector<S> {
        assert_eq!(self.dim(), rhs.dim());
        AmbientVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: GeomScalar> Neg for &AmbientVector<S> {
    type Output = AmbientVector<S>;
    fn neg(self) -> AmbientVector<S> {
        AmbientVector {
            coords: self.coords.iter().map(|a| -a.clone()).collect(),
        }
    }
}

/// Signature inner product `Σ ±u_i v_i`, with the minus sign on time axes.
pub fn inner<S: GeomScalar>(u: &AmbientVector<S>, v: &AmbientVector<S>, sig: &Signature) -> S {
    assert_eq!(u.dim(), sig.dim(), "vector/signature dimension mismatch");
    assert_eq!(v.dim(), sig.dim(), "vector/signature dimension mismatch");
    let mut acc = u.coords[0].lift(S::Base::zero());
    for i in 0..sig.dim() {
        let term = u.coords[i].clone() * v.coords[i].clone();
        acc = if sig.axis_sign(i) < 0 {
            acc - term
        } else {
            acc + term
        };
    }
    acc
}

/// Causal character of a nonzero vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

impl std::fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CausalCharacter::Spacelike => write!(f, "spacelike"),
            CausalCharacter::Timelike => write!(f, "timelike"),
            CausalCharacter::Lightlike => write!(f, "lightlike"),
        }
    }
}

/// Classifies the sign of `inner(v, v)`; values within
/// `tol · ‖v‖²_abs` of zero count as lightlike.
pub fn causal_character<T: Real>(
    v: &AmbientVector<T>,
    sig: &Signature,
    tol: T,
) -> Result<CausalCharacter, AmbientError> {
    let mag = v.euclidean_square();
    if mag.is_zero() {
        return Err(AmbientError::ZeroVector);
    }
    let q = inner(v, v, sig);
    if q.abs() <= tol * mag {
        Ok(CausalCharacter::Lightlike)
    } else if q < T::zero() {
        Ok(CausalCharacter::Timelike)
    } else {
        Ok(CausalCharacter::Spacelike)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn minkowski_time_axis_sign() {
        let sig = Signature::minkowski(5);
        let u = AmbientVector::<f64>::from_f64(&[1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_relative_eq!(inner(&u, &u, &sig), -1.0);
    }

    #[test]
    fn envelope_point_square() {
        // Displacement reached by hand-solving the elliptic envelope system.
        let sig = Signature::minkowski(5);
        let u = AmbientVector::<f64>::from_f64(&[-2.0, 3.0_f64.sqrt(), 0.0, 0.0, 0.0]);
        assert_relative_eq!(inner(&u, &u, &sig), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn euclidean_dot() {
        let sig = Signature::euclidean(2);
        let u = AmbientVector::<f64>::from_f64(&[1.0, 2.0]);
        let v = AmbientVector::<f64>::from_f64(&[3.0, 4.0]);
        assert_relative_eq!(inner(&u, &v, &sig), 11.0);
    }

    #[test]
    fn causal_characters() {
        let sig = Signature::minkowski(5);
        let t = AmbientVector::<f64>::from_f64(&[1.0, 0.0, 0.0, 0.0, 0.0]);
        let l = AmbientVector::<f64>::from_f64(&[1.0, 1.0, 0.0, 0.0, 0.0]);
        let s = AmbientVector::<f64>::from_f64(&[0.0, 1.0, 0.0, 0.0, 0.0]);
        let tol = 1e-12;
        assert_eq!(causal_character(&t, &sig, tol).unwrap(), CausalCharacter::Timelike);
        assert_eq!(causal_character(&l, &sig, tol).unwrap(), CausalCharacter::Lightlike);
        assert_eq!(causal_character(&s, &sig, tol).unwrap(), CausalCharacter::Spacelike);
        let z = AmbientVector::<f64>::from_f64(&[0.0; 5]);
        assert!(causal_character(&z, &sig, tol).is_err());
    }
}
