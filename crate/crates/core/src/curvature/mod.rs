//! Per-point curvature data of a chart: induced metric, connection,
//! curvature/Ricci/scalar/Weyl tensors, unit normal, second fundamental
//! form and shape spectrum, with a Gauss-equation cross-check.

mod extrinsic;
mod generator;
mod intrinsic;
mod metric;

pub use extrinsic::{extrinsic_data, gauss_check, Extrinsic};
pub use generator::generator_curvature;
pub use intrinsic::{
    christoffel, ricci_data, riemann_intrinsic, sectional_curvature, sym_product, weyl_tensor,
    Christoffels, RicciData,
};
pub use metric::{induced_metric_from_jets, MetricJet};

use thiserror::Error;

use crate::numkit::linalg::frobenius4;
use crate::numkit::{AmbientVector, EigenPair, EigenError, Jet, SymOperator};
use crate::scalar::Real;
use crate::shapes::{ChartPoint, ConstructError};

pub type Matrix<T> = Vec<Vec<T>>;
pub type T3<T> = Vec<Vec<Vec<T>>>;
pub type T4<T> = Vec<Vec<Vec<Vec<T>>>>;

#[derive(Clone, Debug, Error)]
pub enum CurvatureError {
    #[error("{0}")]
    NotPositiveDefinite(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Eigen(EigenError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Everything curvature-related at one chart point.
#[derive(Clone, Debug)]
pub struct CurvatureData<T> {
    pub n: usize,
    pub metric: MetricJet<T>,
    pub christoffels: Christoffels<T>,
    pub riemann: T4<T>,
    pub riemann_norm: T,
    pub ricci: RicciData<T>,
    /// Conformal part; `None` below dimension four.
    pub weyl: Option<T4<T>>,
    /// `‖W‖/max(‖R‖, floor)`; `None` when the Weyl tensor is not computed.
    pub weyl_rel: Option<T>,
    pub normal: AmbientVector<T>,
    pub normal_jets: AmbientVector<Jet<T>>,
    pub eps: i8,
    pub second_ff: Matrix<T>,
    pub shape: SymOperator<T>,
    pub shape_spectrum: Vec<EigenPair<T>>,
    pub gauss_residual: T,
}

/// Runs the full per-point pipeline on a codimension-one chart point.
pub fn curvature_data<T: Real>(point: &ChartPoint<T>) -> Result<CurvatureData<T>, CurvatureError> {
    let metric = induced_metric_from_jets(&point.jets, &point.sig)?;
    let christoffels = christoffel(&metric);
    let riemann = riemann_intrinsic(&metric, &christoffels);
    let riemann_norm = frobenius4(&riemann);
    let ricci = ricci_data(&metric, &riemann)?;
    let weyl = weyl_tensor(&metric, &riemann, &ricci.ricci, ricci.scalar);
    let weyl_rel = weyl
        .as_ref()
        .map(|w| frobenius4(w) / riemann_norm.max(T::of(1e-12)));
    let ext = extrinsic_data(point, &metric)?;
    let gauss_residual = gauss_check(&riemann, &ext.h, ext.eps);
    Ok(CurvatureData {
        n: metric.n,
        metric,
        christoffels,
        riemann,
        riemann_norm,
        ricci,
        weyl,
        weyl_rel,
        normal: ext.normal,
        normal_jets: ext.normal_jets,
        eps: ext.eps,
        second_ff: ext.h,
        shape: ext.shape,
        shape_spectrum: ext.shape_spectrum,
        gauss_residual,
    })
}
