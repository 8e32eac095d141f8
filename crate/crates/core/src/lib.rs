//! Numerical differential-geometry workbench for canal and rotational
//! hypersurfaces in Euclidean and Minkowski ambient spaces.
//!
//! The crate constructs hypersurface charts from declarative generating
//! data (a center curve and a radius profile), computes their curvature
//! exactly through truncated-Taylor jet arithmetic, detects
//! quasi-constant-sectional-curvature structure, verifies the associated
//! structure equations on sampled grids, and classifies points of
//! conformally flat hypersurfaces by their shape spectra.
//!
//! Core numerics are generic over the floating-point type through
//! [`Real`]; concrete `f64` aliases for the main types live at the crate
//! root.

#![forbid(unsafe_code)]

pub mod curvature;
pub mod exprlang;
pub mod numkit;
pub mod qclab;
pub mod scalar;
pub mod shapes;
pub mod tol;

pub use scalar::{GeomScalar, Real};
pub use tol::Tolerances;

/// Order-three jet over `f64`.
pub type Jet64 = numkit::Jet<f64>;
/// Order-three jet over `f32`.
pub type Jet32 = numkit::Jet<f32>;
/// Ambient vector over `f64`.
pub type AmbientVector64 = numkit::AmbientVector<f64>;
/// Hypersurface family description over `f64`.
pub type CanalSpec64 = shapes::CanalSpec<f64>;
/// Chart point over `f64`.
pub type ChartPoint64 = shapes::ChartPoint<f64>;
/// Sampled grid over `f64`.
pub type Grid64 = shapes::Grid<f64>;
/// Per-point curvature bundle over `f64`.
pub type CurvatureData64 = curvature::CurvatureData<f64>;
/// Analyzed grid over `f64`.
pub type GridAnalysis64 = qclab::GridAnalysis<f64>;
