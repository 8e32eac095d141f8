//! Signature-aware linear algebra and truncated-Taylor jet arithmetic.
//!
//! Everything downstream (chart construction, curvature, detection) is
//! built from these pieces: the indefinite inner product, deterministic
//! adapted frames, dense order-three jets, and a Jacobi eigensolver for
//! metric-self-adjoint operators. All values are immutable after
//! construction and every operation is pure.

pub mod ambient;
pub mod eigen;
pub mod frame;
pub mod jet;
pub mod linalg;
pub mod taylor1;

pub use ambient::{causal_character, inner, AmbientVector, CausalCharacter, Signature};
pub use eigen::{canonicalize_sign, sym_eigen, EigenPair, SymOperator};
pub use frame::{orthonormal_complement_frame, pseudo_null_frame, OrthoFrame, PseudoNullFrame};
pub use jet::{Jet, JET_ORDER};
pub use taylor1::Taylor1;

use thiserror::Error;

/// Domain violations in elementary-function evaluation.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum DomainError {
    #[error("logarithm of a non-positive value")]
    LogNonPositive,
    #[error("square root of a non-positive value")]
    SqrtNonPositive,
    #[error("division by zero")]
    DivisionByZero,
    #[error("power with non-positive base and non-integer exponent")]
    PowBaseNonPositive,
}

/// Errors from ambient-vector classification.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum AmbientError {
    #[error("causal character of the zero vector is undefined")]
    ZeroVector,
}

/// Errors from adapted-frame construction.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FrameError {
    #[error("degenerate frame input: {0}")]
    Degenerate(String),
}

/// Errors from the symmetric eigensolver.
#[derive(Clone, Copy, Debug, Error, PartialEq)]
pub enum EigenError {
    #[error("operator is not metric-self-adjoint (defect {defect:.3e})")]
    NotSelfAdjoint { defect: f64 },
    #[error("metric is not positive definite")]
    MetricNotPositiveDefinite,
    #[error("Jacobi iteration did not converge")]
    NoConvergence,
}
