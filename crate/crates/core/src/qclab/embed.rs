//! Embedding-data recovery: the synthetic second fundamental form and
//! the sphere family it implies.
//!
//! With negative horizontal curvature (Minkowski branch) the tensor is
//! `h = √(-a)·g - (b/√(-a))·η⊗η`; for positive `a` (Euclidean branch)
//! the quasi-umbilical form gives `h = √a·g + (b/√a)·η⊗η`, the sign of
//! the second coefficient being fixed by the Gauss equation
//! `R = ε(h∧h)`. The sphere data follows from the normal orientation
//! `N = -(Z - z)/R`: center `z = Z + R·N`, radius `R = 1/√|a|`.

use crate::curvature::{CurvatureData, Matrix};
use crate::numkit::AmbientVector;
use crate::qclab::detect::QCDecomposition;
use crate::qclab::synthetic::eta_from_xi;
use crate::qclab::QcError;
use crate::scalar::Real;
use crate::shapes::ChartPoint;

/// Recovered embedding data at one point.
#[derive(Clone, Debug)]
pub struct EmbeddingData<T> {
    /// `√|a|`, the umbilical coefficient of the synthetic tensor.
    pub alpha: T,
    /// Coefficient of `η⊗η` in the synthetic tensor.
    pub beta_coeff: T,
    /// Synthetic second fundamental form `α g + β η⊗η`.
    pub h_synthetic: Matrix<T>,
    pub recovered_center: AmbientVector<T>,
    pub recovered_radius: T,
    /// Grid-level Codazzi residual, attached by the analysis driver.
    pub codazzi_residual: Option<T>,
}

/// Recovers sphere data and the synthetic tensor from detected
/// coefficients. The branch is keyed to the sign of `a` and must match
/// the ambient signature.
pub fn recover_embedding<T: Real>(
    point: &ChartPoint<T>,
    qc: &QCDecomposition<T>,
    cd: &CurvatureData<T>,
) -> Result<EmbeddingData<T>, QcError> {
    let a = qc.a;
    if a.abs() < T::of(1e-12) {
        return Err(QcError::Degenerate(
            "horizontal curvature too close to zero for radius recovery".into(),
        ));
    }
    let minkowski = point.sig.is_minkowski();
    if minkowski && a >= T::zero() {
        return Err(QcError::Degenerate(
            "positive horizontal curvature has no space-like Minkowski realization".into(),
        ));
    }
    if !minkowski && a <= T::zero() {
        return Err(QcError::Degenerate(
            "negative horizontal curvature has no Euclidean hypersurface realization".into(),
        ));
    }
    let alpha = a.abs().sqrt();
    let beta = if minkowski { -qc.b / alpha } else { qc.b / alpha };

    let n = cd.n;
    let eta = eta_from_xi(&cd.metric.g, &qc.xi);
    let mut h = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            h[i][j] = alpha * cd.metric.g[i][j] + beta * eta[i] * eta[j];
        }
    }

    let radius = alpha.recip();
    let center = &point.position + &cd.normal.scale(&radius);

    Ok(EmbeddingData {
        alpha,
        beta_coeff: beta,
        h_synthetic: h,
        recovered_center: center,
        recovered_radius: radius,
        codazzi_residual: None,
    })
}
