//! The two structural curvature tensors and synthetic combinations.
//!
//! For a metric `g` and a unit field `ξ` with 1-form `η`:
//!
//! ```text
//! π(X,Y,Z,U) = g(Y,Z)g(X,U) - g(X,Z)g(Y,U)
//! Φ(X,Y,Z,U) = g(Y,Z)η(X)η(U) - g(X,Z)η(Y)η(U)
//!            + g(X,U)η(Y)η(Z) - g(Y,U)η(X)η(Z)
//! ```
//!
//! A curvature tensor of the form `aπ + bΦ` is the detection target.

use crate::curvature::{sym_product, Matrix, T4};
use crate::scalar::Real;

/// Lowers a vector with the metric: `η_i = g_ij ξ^j`.
pub fn eta_from_xi<T: Real>(g: &Matrix<T>, xi: &[T]) -> Vec<T> {
    let n = g.len();
    (0..n)
        .map(|i| {
            let mut acc = T::zero();
            for j in 0..n {
                acc = acc + g[i][j] * xi[j];
            }
            acc
        })
        .collect()
}

/// The constant-curvature generator `π`.
pub fn pi_tensor<T: Real>(g: &Matrix<T>) -> T4<T> {
    let mut t = sym_product(g, g);
    let half = T::of(0.5);
    for a in t.iter_mut() {
        for b in a.iter_mut() {
            for c in b.iter_mut() {
                for d in c.iter_mut() {
                    *d = *d * half;
                }
            }
        }
    }
    t
}

/// The structural generator `Φ` built from `η = g·ξ`.
pub fn phi_tensor<T: Real>(g: &Matrix<T>, eta: &[T]) -> T4<T> {
    let n = g.len();
    let mut ee = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            ee[i][j] = eta[i] * eta[j];
        }
    }
    sym_product(&ee, g)
}

/// Synthetic curvature tensor `aπ + bΦ`.
pub fn qc_tensor<T: Real>(g: &Matrix<T>, xi: &[T], a: T, b: T) -> T4<T> {
    let n = g.len();
    let eta = eta_from_xi(g, xi);
    let pi = pi_tensor(g);
    let phi = phi_tensor(g, &eta);
    let mut out = vec![vec![vec![vec![T::zero(); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    out[i][j][k][l] = a * pi[i][j][k][l] + b * phi[i][j][k][l];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pi_on_orthonormal_plane() {
        let g = vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ];
        let pi = pi_tensor(&g);
        // π(u,v,v,u) = 1 for an orthonormal pair.
        assert_relative_eq!(pi[0][1][1][0], 1.0);
        assert_relative_eq!(pi[0][1][0][1], -1.0);
        assert_relative_eq!(pi[0][1][1][1], 0.0);
    }

    #[test]
    fn phi_vanishes_on_fully_horizontal_slots() {
        let g = vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ];
        let xi = vec![0.0, 0.0, 0.0, 1.0];
        let eta = eta_from_xi(&g, &xi);
        let phi = phi_tensor(&g, &eta);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        assert_relative_eq!(phi[i][j][k][l], 0.0);
                    }
                }
            }
        }
        // Mixed section containing ξ: Φ(x,ξ,ξ,x) = g(x,x)η(ξ)² = 1.
        assert_relative_eq!(phi[0][3][3][0], 1.0);
    }
}
