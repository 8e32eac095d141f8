//! Parabolic hyperspheres of a lightlike hyperplane.
//!
//! In a coordinate system `(T; e_1, …, e_{n-1}, t)` of the hyperplane
//! (orthonormal Euclidean part plus the null direction), the quadric is
//! `z_1² + … + z_{n-1}² - 2 q z_n = 0`. Its graph form is used to check
//! that the induced geometry is flat.

use crate::numkit::{Jet, Signature};
use crate::scalar::Real;
use crate::shapes::ConstructError;

/// Point of the parabolic hypersphere in hyperplane coordinates:
/// `(w_1, …, w_{n-1}, |w|²/(2q))`.
pub fn eval_parabolic_hypersphere<T: Real>(q: T, w: &[T]) -> Result<Vec<T>, ConstructError> {
    if q <= T::zero() {
        return Err(ConstructError::Validation(
            "parabolic hypersphere parameter q must be positive".into(),
        ));
    }
    let wsq = w.iter().fold(T::zero(), |acc, &x| acc + x * x);
    let mut out = w.to_vec();
    out.push(wsq / (T::of(2.0) * q));
    Ok(out)
}

/// Ambient chart of the parabolic hypersphere for curvature checks.
///
/// The hyperplane is realized in Minkowski space with the null direction
/// `t = (1, 1, 0, …, 0)` and the Euclidean frame on the remaining axes;
/// the returned jets are the ambient coordinates in the `w` variables.
pub fn parabolic_hypersphere_chart<T: Real>(
    q: T,
    w: &[T],
) -> Result<(Vec<Jet<T>>, Signature), ConstructError> {
    if q <= T::zero() {
        return Err(ConstructError::Validation(
            "parabolic hypersphere parameter q must be positive".into(),
        ));
    }
    let vars = w.len();
    let ambient = Signature::minkowski(vars + 2);
    let w_jets: Vec<Jet<T>> = w
        .iter()
        .enumerate()
        .map(|(i, &wi)| Jet::variable(vars, i, wi))
        .collect();
    let mut wsq = Jet::constant(vars, T::zero());
    for wj in &w_jets {
        wsq = &wsq + &(wj * wj);
    }
    let height = wsq.scale((T::of(2.0) * q).recip());
    let mut coords = Vec::with_capacity(vars + 2);
    coords.push(height.clone());
    coords.push(height);
    coords.extend(w_jets);
    Ok((coords, ambient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn vertex_maps_to_origin() {
        let p = eval_parabolic_hypersphere(1.0, &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(p, vec![0.0; 4]);
    }

    #[test]
    fn height_is_half_square_norm_over_q() {
        // |w|² = 2 gives height 1 at q = 1.
        let p = eval_parabolic_hypersphere(1.0, &[1.0, 1.0, 0.0]).unwrap();
        assert_eq!(p, vec![1.0, 1.0, 0.0, 1.0]);
        // |w|² = 4 at q = 2 also gives height 1.
        let p = eval_parabolic_hypersphere(2.0, &[2.0, 0.0, 0.0]).unwrap();
        assert_relative_eq!(p[3], 1.0);
    }

    #[test]
    fn nonpositive_q_rejected() {
        assert!(eval_parabolic_hypersphere(0.0, &[1.0]).is_err());
        assert!(eval_parabolic_hypersphere(-1.0, &[1.0]).is_err());
    }
}
