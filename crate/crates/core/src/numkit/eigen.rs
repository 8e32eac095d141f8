//! Spectra of metric-self-adjoint operators on small dense matrices.
//!
//! The operator is first transported to an ordinary symmetric matrix with
//! the Cholesky factor of the metric, then diagonalized by cyclic Jacobi
//! rotations. Eigenvectors come back metric-orthonormal with a canonical
//! sign, sorted by ascending eigenvalue.

use crate::numkit::linalg::{cholesky, solve_lower, solve_lower_transposed};
use crate::numkit::EigenError;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TARGET: f64 = 1e-13;
const SELF_ADJOINT_TOL: f64 = 1e-12;

/// Linear operator that is self-adjoint with respect to some
/// positive-definite metric: `g(Au, v) = g(u, Av)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymOperator<T> {
    dim: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Real> SymOperator<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "operator must be square");
        Self { dim, rows }
    }

    pub fn identity(dim: usize) -> Self {
        let mut rows = vec![vec![T::zero(); dim]; dim];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = T::one();
        }
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }
}

/// Eigenvalue with its metric-orthonormal eigenvector.
#[derive(Clone, Debug)]
pub struct EigenPair<T> {
    pub value: T,
    pub vector: Vec<T>,
}

/// Flips the vector so its largest-magnitude component (first on ties)
/// is positive.
pub fn canonicalize_sign<T: Real>(v: &mut [T]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < T::zero() {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

fn off_diagonal_norm<T: Real>(s: &[Vec<T>]) -> T {
    let n = s.len();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc = acc + s[i][j] * s[i][j];
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi diagonalization of a symmetric matrix. Returns the
/// diagonal and the accumulated rotation (columns are eigenvectors).
fn jacobi<T: Real>(mut s: Vec<Vec<T>>) -> Result<(Vec<T>, Vec<Vec<T>>), EigenError> {
    let n = s.len();
    let mut q = vec![vec![T::zero(); n]; n];
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let scale = {
        let mut acc = T::zero();
        for row in &s {
            for &x in row {
                acc = acc + x * x;
            }
        }
        acc.sqrt().max(T::one())
    };
    let target = T::of(OFF_DIAGONAL_TARGET) * scale;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&s) <= target {
            let diag = (0..n).map(|i| s[i][i]).collect();
            return Ok((diag, q));
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                let apq = s[p][r];
                if apq.abs() <= T::of(OFF_DIAGONAL_TARGET) * scale / T::of((n * n) as f64) {
                    continue;
                }
                let theta = (s[r][r] - s[p][p]) / (T::of(2.0) * apq);
                let t = {
                    let sign = if theta < T::zero() { -T::one() } else { T::one() };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let skp = s[k][p];
                    let skr = s[k][r];
                    s[k][p] = c * skp - sn * skr;
                    s[k][r] = sn * skp + c * skr;
                }
                for k in 0..n {
                    let spk = s[p][k];
                    let srk = s[r][k];
                    s[p][k] = c * spk - sn * srk;
                    s[r][k] = sn * spk + c * srk;
                }
                for k in 0..n {
                    let qkp = q[k][p];
                    let qkr = q[k][r];
                    q[k][p] = c * qkp - sn * qkr;
                    q[k][r] = sn * qkp + c * qkr;
                }
            }
        }
    }
    if off_diagonal_norm(&s) <= target {
        let diag = (0..n).map(|i| s[i][i]).collect();
        return Ok((diag, q));
    }
    Err(EigenError::NoConvergence)
}

/// Full spectrum of a `metric`-self-adjoint operator.
///
/// Eigenvectors are metric-orthonormal and sign-canonicalized; pairs are
/// sorted by ascending eigenvalue.
pub fn sym_eigen<T: Real>(
    op: &SymOperator<T>,
    metric: &[Vec<T>],
) -> Result<Vec<EigenPair<T>>, EigenError> {
    let n = op.dim();
    assert_eq!(metric.len(), n, "operator/metric dimension mismatch");

    // B = G·A must be symmetric for a g-self-adjoint A.
    let mut b = vec![vec![T::zero(); n]; n];
    let mut scale = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut acc = T::zero();
            for k in 0..n {
                acc = acc + metric[i][k] * op.get(k, j);
            }
            b[i][j] = acc;
            scale = scale.max(acc.abs());
        }
    }
    let tol = T::of(SELF_ADJOINT_TOL) * scale.max(T::one());
    for i in 0..n {
        for j in 0..i {
            if (b[i][j] - b[j][i]).abs() > tol {
                return Err(EigenError::NotSelfAdjoint {
                    defect: (b[i][j] - b[j][i]).abs().to_f64().unwrap_or(f64::NAN),
                });
            }
            let m = (b[i][j] + b[j][i]) * T::of(0.5);
            b[i][j] = m;
            b[j][i] = m;
        }
    }

    let l = cholesky(metric).ok_or(EigenError::MetricNotPositiveDefinite)?;
    // S = L⁻¹ B L⁻ᵀ, computed column by column.
    let mut x = vec![vec![T::zero(); n]; n];
    for col in 0..n {
        let bcol: Vec<T> = (0..n).map(|r| b[r][col]).collect();
        let y = solve_lower(&l, &bcol);
        for r in 0..n {
            x[r][col] = y[r];
        }
    }
    let mut s = vec![vec![T::zero(); n]; n];
    for row in 0..n {
        let y = solve_lower(&l, &x[row]);
        s[row].copy_from_slice(&y);
    }
    for i in 0..n {
        for j in 0..i {
            let m = (s[i][j] + s[j][i]) * T::of(0.5);
            s[i][j] = m;
            s[j][i] = m;
        }
    }

    let (diag, q) = jacobi(s)?;
    let mut pairs: Vec<EigenPair<T>> = (0..n)
        .map(|col| {
            let qcol: Vec<T> = (0..n).map(|r| q[r][col]).collect();
            let mut vector = solve_lower_transposed(&l, &qcol);
            canonicalize_sign(&mut vector);
            EigenPair {
                value: diag[col],
                vector,
            }
        })
        .collect();
    pairs.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("NaN eigenvalue"));
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn identity(n: usize) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        m
    }

    #[test]
    fn identity_operator_spectrum() {
        let g = vec![vec![2.0, 0.3], vec![0.3, 1.0]];
        let op = SymOperator::identity(2);
        let pairs = sym_eigen(&op, &g).unwrap();
        for p in &pairs {
            assert_relative_eq!(p.value, 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn ricci_like_diagonal_spectrum() {
        // Multiplicity pattern (3, 1) with values -2.4 and -1.2.
        let op = SymOperator::new(vec![
            vec![-2.4, 0.0, 0.0, 0.0],
            vec![0.0, -2.4, 0.0, 0.0],
            vec![0.0, 0.0, -2.4, 0.0],
            vec![0.0, 0.0, 0.0, -1.2],
        ]);
        let pairs = sym_eigen(&op, &identity(4)).unwrap();
        let values: Vec<f64> = pairs.iter().map(|p| p.value).collect();
        assert_relative_eq!(values[0], -2.4);
        assert_relative_eq!(values[1], -2.4);
        assert_relative_eq!(values[2], -2.4);
        assert_relative_eq!(values[3], -1.2);
    }

    #[test]
    fn off_diagonal_two_by_two() {
        let op = SymOperator::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let pairs = sym_eigen(&op, &identity(2)).unwrap();
        assert_relative_eq!(pairs[0].value, -1.0, epsilon = 1e-13);
        assert_relative_eq!(pairs[1].value, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn reconstruction_and_orthonormality() {
        let g = vec![
            vec![2.0, 0.4, 0.1],
            vec![0.4, 1.5, -0.2],
            vec![0.1, -0.2, 1.0],
        ];
        // Build a g-self-adjoint operator A = G⁻¹·B with B symmetric.
        let b = vec![
            vec![1.0, 0.5, 0.2],
            vec![0.5, -0.7, 0.3],
            vec![0.2, 0.3, 2.0],
        ];
        let ginv = crate::numkit::linalg::spd_inverse(&g).unwrap();
        let mut rows = vec![vec![0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    rows[i][j] += ginv[i][k] * b[k][j];
                }
            }
        }
        let op = SymOperator::new(rows.clone());
        let pairs = sym_eigen(&op, &g).unwrap();
        // g-orthonormality.
        for (i, p) in pairs.iter().enumerate() {
            for (j, q) in pairs.iter().enumerate() {
                let mut acc = 0.0;
                for a in 0..3 {
                    for c in 0..3 {
                        acc += p.vector[a] * g[a][c] * q.vector[c];
                    }
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(acc, expect, epsilon = 1e-10);
            }
        }
        // Reconstruction A = Σ λ v (gv)ᵀ.
        let mut rec = vec![vec![0.0; 3]; 3];
        for p in &pairs {
            let gv: Vec<f64> = (0..3)
                .map(|r| (0..3).map(|c| g[r][c] * p.vector[c]).sum())
                .collect();
            for i in 0..3 {
                for j in 0..3 {
                    rec[i][j] += p.value * p.vector[i] * gv[j];
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(rec[i][j], rows[i][j], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let op = SymOperator::new(vec![vec![0.0, 1.0], vec![-1.0, 0.0]]);
        assert!(matches!(
            sym_eigen(&op, &identity(2)),
            Err(EigenError::NotSelfAdjoint { .. })
        ));
    }
}
