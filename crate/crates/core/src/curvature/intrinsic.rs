//! Intrinsic curvature from the metric jet: Levi-Civita connection,
//! curvature tensor, Ricci data and the conformal (Weyl) part.
//!
//! Sign convention: the fully covariant tensor satisfies
//! `R(u,v,v,u) = +1` on the unit two-sphere, so constant-curvature
//! metrics obey `R = c·π` with
//! `π(X,Y,Z,U) = g(Y,Z)g(X,U) - g(X,Z)g(Y,U)`.

use crate::curvature::metric::MetricJet;
use crate::curvature::{CurvatureError, Matrix, T4};
use crate::numkit::{EigenPair, SymOperator};
use crate::scalar::Real;

/// Connection coefficients and their first coordinate derivatives.
#[derive(Clone, Debug)]
pub struct Christoffels<T> {
    /// `gamma[k][i][j] = Γ^k_ij`
    pub gamma: Vec<Vec<Vec<T>>>,
    /// `dgamma[m][k][i][j] = ∂_m Γ^k_ij`
    pub dgamma: T4<T>,
}

/// Levi-Civita connection of the metric jet.
pub fn christoffel<T: Real>(m: &MetricJet<T>) -> Christoffels<T> {
    let n = m.n;
    let half = T::of(0.5);

    let mut gamma = vec![vec![vec![T::zero(); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for l in 0..n {
                    acc = acc
                        + m.g_inv[k][l]
                            * (m.dg[i][j][l] + m.dg[j][i][l] - m.dg[l][i][j]);
                }
                gamma[k][i][j] = half * acc;
            }
        }
    }

    // ∂ g^{-1} = -g^{-1} (∂ g) g^{-1}
    let mut dginv = vec![vec![vec![T::zero(); n]; n]; n];
    for mm in 0..n {
        for k in 0..n {
            for l in 0..n {
                let mut acc = T::zero();
                for a in 0..n {
                    for b in 0..n {
                        acc = acc + m.g_inv[k][a] * m.dg[mm][a][b] * m.g_inv[b][l];
                    }
                }
                dginv[mm][k][l] = -acc;
            }
        }
    }

    let mut dgamma = vec![vec![vec![vec![T::zero(); n]; n]; n]; n];
    for mm in 0..n {
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = T::zero();
                    for l in 0..n {
                        acc = acc
                            + dginv[mm][k][l]
                                * (m.dg[i][j][l] + m.dg[j][i][l] - m.dg[l][i][j])
                            + m.g_inv[k][l]
                                * (m.ddg[mm][i][j][l] + m.ddg[mm][j][i][l]
                                    - m.ddg[mm][l][i][j]);
                    }
                    dgamma[mm][k][i][j] = half * acc;
                }
            }
        }
    }

    Christoffels { gamma, dgamma }
}

/// Fully covariant curvature tensor `R_ijkl`.
pub fn riemann_intrinsic<T: Real>(m: &MetricJet<T>, ch: &Christoffels<T>) -> T4<T> {
    let n = m.n;
    let mut up = vec![vec![vec![vec![T::zero(); n]; n]; n]; n];
    for mm in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = ch.dgamma[i][mm][j][k] - ch.dgamma[j][mm][i][k];
                    for p in 0..n {
                        acc = acc + ch.gamma[mm][i][p] * ch.gamma[p][j][k]
                            - ch.gamma[mm][j][p] * ch.gamma[p][i][k];
                    }
                    up[mm][i][j][k] = acc;
                }
            }
        }
    }
    let mut r = vec![vec![vec![vec![T::zero(); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut acc = T::zero();
                    for mm in 0..n {
                        acc = acc + m.g[l][mm] * up[mm][i][j][k];
                    }
                    r[i][j][k][l] = acc;
                }
            }
        }
    }
    r
}

/// Ricci data of a curvature tensor.
#[derive(Clone, Debug)]
pub struct RicciData<T> {
    /// Covariant Ricci tensor `Ric_jk = g^{il} R_ijkl`.
    pub ricci: Matrix<T>,
    /// Ricci operator (one index raised), metric-self-adjoint.
    pub operator: SymOperator<T>,
    /// Spectrum of the operator, metric-orthonormal eigenvectors.
    pub spectrum: Vec<EigenPair<T>>,
    /// Scalar curvature `τ`.
    pub scalar: T,
}

pub fn ricci_data<T: Real>(
    m: &MetricJet<T>,
    riemann: &T4<T>,
) -> Result<RicciData<T>, CurvatureError> {
    let n = m.n;
    let mut ricci = vec![vec![T::zero(); n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut acc = T::zero();
            for i in 0..n {
                for l in 0..n {
                    acc = acc + m.g_inv[i][l] * riemann[i][j][k][l];
                }
            }
            ricci[j][k] = acc;
        }
    }
    let mut op_rows = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = T::zero();
            for k in 0..n {
                acc = acc + m.g_inv[i][k] * ricci[k][j];
            }
            op_rows[i][j] = acc;
        }
    }
    let operator = SymOperator::new(op_rows);
    let spectrum =
        crate::numkit::sym_eigen(&operator, &m.g).map_err(CurvatureError::Eigen)?;
    let mut scalar = T::zero();
    for j in 0..n {
        for k in 0..n {
            scalar = scalar + m.g_inv[j][k] * ricci[j][k];
        }
    }
    Ok(RicciData {
        ricci,
        operator,
        spectrum,
        scalar,
    })
}

/// Symmetrized product of two symmetric 2-tensors producing an algebraic
/// curvature tensor; normalized so that `sym_product(g, g) / 2 = π`.
pub fn sym_product<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> T4<T> {
    let n = a.len();
    let mut out = vec![vec![vec![vec![T::zero(); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    out[i][j][k][l] = a[j][k] * b[i][l] + a[i][l] * b[j][k]
                        - a[i][k] * b[j][l]
                        - a[j][l] * b[i][k];
                }
            }
        }
    }
    out
}

/// Conformal (Weyl) part of the curvature tensor; `None` below dimension
/// four where it vanishes identically.
pub fn weyl_tensor<T: Real>(
    m: &MetricJet<T>,
    riemann: &T4<T>,
    ricci: &Matrix<T>,
    scalar: T,
) -> Option<T4<T>> {
    let n = m.n;
    if n < 4 {
        return None;
    }
    let nf = T::of(n as f64);
    // Schouten tensor P = (Ric - τ/(2(n-1)) g) / (n-2).
    let mut p = vec![vec![T::zero(); n]; n];
    let c = scalar / (T::of(2.0) * (nf - T::one()));
    for i in 0..n {
        for j in 0..n {
            p[i][j] = (ricci[i][j] - c * m.g[i][j]) / (nf - T::of(2.0));
        }
    }
    let pg = sym_product(&p, &m.g);
    let mut w = riemann.clone();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    w[i][j][k][l] = w[i][j][k][l] - pg[i][j][k][l];
                }
            }
        }
    }
    Some(w)
}

/// Sectional curvature of the plane spanned by `u` and `v`.
pub fn sectional_curvature<T: Real>(
    riemann: &T4<T>,
    g: &Matrix<T>,
    u: &[T],
    v: &[T],
) -> Result<T, CurvatureError> {
    let n = g.len();
    let pair = |a: &[T], b: &[T]| {
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + g[i][j] * a[i] * b[j];
            }
        }
        acc
    };
    let denom = pair(u, u) * pair(v, v) - pair(u, v) * pair(u, v);
    if denom.abs() < T::of(1e-14) {
        return Err(CurvatureError::Degenerate(
            "sectional curvature of a degenerate plane".into(),
        ));
    }
    let mut num = T::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    num = num + riemann[i][j][k][l] * u[i] * v[j] * v[k] * u[l];
                }
            }
        }
    }
    Ok(num / denom)
}
