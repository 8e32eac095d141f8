//! Small dense linear algebra used by the geometry pipeline.
//!
//! Dimensions stay in single digits, so everything is written directly
//! over nested `Vec`s. The cofactor determinant is generic so it can run
//! on jets.

use num_traits::Zero;

use crate::numkit::ambient::{AmbientVector, Signature};
use crate::scalar::{GeomScalar, Real};

/// Cholesky factor `L` (lower triangular, `A = L Lᵀ`) of a symmetric
/// positive-definite matrix; `None` when a pivot fails.
pub fn cholesky<T: Real>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum = sum - l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= T::zero() {
                    return None;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solves `L x = b` with `L` lower triangular.
pub fn solve_lower<T: Real>(l: &[Vec<T>], b: &[T]) -> Vec<T> {
    let n = b.len();
    let mut x = vec![T::zero(); n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum = sum - l[i][k] * x[k];
        }
        x[i] = sum / l[i][i];
    }
    x
}

/// Solves `Lᵀ x = b` with `L` lower triangular.
pub fn solve_lower_transposed<T: Real>(l: &[Vec<T>], b: &[T]) -> Vec<T> {
    let n = b.len();
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut sum = b[i];
        for k in i + 1..n {
            sum = sum - l[k][i] * x[k];
        }
        x[i] = sum / l[i][i];
    }
    x
}

/// Inverse of a symmetric positive-definite matrix via its Cholesky factor.
pub fn spd_inverse<T: Real>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let l = cholesky(a)?;
    let mut inv = vec![vec![T::zero(); n]; n];
    for col in 0..n {
        let mut e = vec![T::zero(); n];
        e[col] = T::one();
        let y = solve_lower(&l, &e);
        let x = solve_lower_transposed(&l, &y);
        for row in 0..n {
            inv[row][col] = x[row];
        }
    }
    // Symmetrize against rounding.
    for i in 0..n {
        for j in 0..i {
            let m = (inv[i][j] + inv[j][i]) * T::of(0.5);
            inv[i][j] = m;
            inv[j][i] = m;
        }
    }
    Some(inv)
}

/// Determinant by cofactor expansion along the first row. Exponential in
/// the dimension, which is fine at the sizes used here (≤ 5), and works
/// over any scalar ring including jets.
pub fn det_cofactor<S: GeomScalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let zero = m[0][0].lift(S::Base::zero());
    let mut acc = zero;
    for col in 0..n {
        let mut minor: Vec<Vec<S>> = Vec::with_capacity(n - 1);
        for row in m.iter().skip(1) {
            let mut r: Vec<S> = Vec::with_capacity(n - 1);
            for (c, entry) in row.iter().enumerate() {
                if c != col {
                    r.push(entry.clone());
                }
            }
            minor.push(r);
        }
        let term = m[0][col].clone() * det_cofactor(&minor);
        acc = if col % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// A vector orthogonal (in the signature inner product) to all `rows`,
/// which must be `dim - 1` independent vectors. The construction is the
/// generalized cross product with time axes sign-flipped afterwards.
pub fn orthogonal_complement_vector<S: GeomScalar>(
    rows: &[AmbientVector<S>],
    sig: &Signature,
) -> AmbientVector<S> {
    let dim = sig.dim();
    assert_eq!(rows.len(), dim - 1, "need dim-1 rows for a cross product");
    let proto = rows[0].coords[0].clone();
    let mut out = AmbientVector::zero_like(&proto, dim);
    for axis in 0..dim {
        let minor: Vec<Vec<S>> = rows
            .iter()
            .map(|r| {
                r.coords
                    .iter()
                    .enumerate()
                    .filter(|(c, _)| *c != axis)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let mut d = det_cofactor(&minor);
        if axis % 2 == 1 {
            d = -d;
        }
        // Euclidean cross product entry; raising with the metric flips
        // time components so the signature orthogonality holds.
        if sig.axis_sign(axis) < 0 {
            d = -d;
        }
        out.coords[axis] = d;
    }
    out
}

/// Frobenius norm of a rank-4 tensor stored as nested `Vec`s.
pub fn frobenius4<T: Real>(t: &[Vec<Vec<Vec<T>>>]) -> T {
    let mut acc = T::zero();
    for a in t {
        for b in a {
            for c in b {
                for &d in c {
                    acc = acc + d * d;
                }
            }
        }
    }
    acc.sqrt()
}
