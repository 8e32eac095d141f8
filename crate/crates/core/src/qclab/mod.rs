//! Quasi-constant-curvature detection, structure-equation verification,
//! embedding recovery and point classification.

mod classify;
mod detect;
mod embed;
pub mod fields;
mod isometry;
mod pipeline;
pub mod synthetic;

pub use classify::{classify_point, classify_qc, PointClassification, QcClass, ShapeLabel};
pub use detect::{detect_qc, QCDecomposition, QcOutcome};
pub use embed::{recover_embedding, EmbeddingData};
pub use fields::{codazzi_residual, estimate_k, grad_tau_alignment, structure_residuals};
pub use isometry::{xi_isometry_check, IsometryReport};
pub use pipeline::{analyze_grid, analyze_sampled_grid, GridAnalysis, PointAnalysis};

use thiserror::Error;

use crate::shapes::ConstructError;

/// Detection failures at a point.
#[derive(Clone, Debug, Error)]
pub enum QcError {
    #[error("detection needs dimension at least 4, got {n}")]
    DimensionTooSmall { n: usize },
    #[error("Ricci spectrum lacks the (n-1, 1) multiplicity pattern: {spectrum:?}")]
    WrongMultiplicity { spectrum: Vec<f64> },
    #[error("curvature fit residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("{0}")]
    Degenerate(String),
}

/// Grid-level pipeline failures.
#[derive(Clone, Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("numeric degeneracy at grid index {index:?}: {message}")]
    Degenerate { index: Vec<usize>, message: String },
    #[error("grid too coarse for stencils (need at least 3 points per axis)")]
    TooCoarse,
    #[error("field diagnostics unavailable: {0}")]
    FieldsUnavailable(String),
}

/// Residuals of the structure equations over a grid (max norms at
/// full-stencil interior points).
#[derive(Clone, Copy, Debug)]
pub struct StructureResiduals<T> {
    /// `da = ξ(a)·η`
    pub r_da: T,
    /// `dη(x, y) = 0` on horizontal pairs
    pub r_deta_hor: T,
    /// `b·dη(ξ, x) = db(x)` on horizontal arguments
    pub r_theta: T,
    /// `∇_x ξ = k·x` on horizontal arguments
    pub r_umb: T,
    /// `dk = ξ(k)·η`
    pub r_dk: T,
    /// Subprojectivity: `db = ξ(b)·η`
    pub r_subproj_db: T,
    /// Subprojectivity: `‖∇_ξ ξ‖`
    pub r_geodesic: T,
    /// Subprojectivity: `‖dη‖`
    pub r_deta_full: T,
    pub evaluated_points: usize,
}

/// Umbilicity-factor estimates over a grid.
#[derive(Clone, Debug)]
pub struct KEstimates<T> {
    /// Stencil route `ξ(a)/(2b)`, present at interior points.
    pub alpha: Vec<Option<T>>,
    /// Jet-exact least-squares route, present everywhere.
    pub beta: Vec<T>,
    /// Worst disagreement between the two routes.
    pub max_discrepancy: T,
}
