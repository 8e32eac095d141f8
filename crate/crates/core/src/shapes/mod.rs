//! Canal and rotational hypersurface construction.
//!
//! A hypersurface is described declaratively by a [`CanalSpec`]: an
//! ambient signature, a center curve `z(s)`, a radius profile `R(s)` and
//! one of four kinds keyed to the causal character of the center-curve
//! tangent. Points are produced in closed form from the envelope system
//!
//! ```text
//! (Z - z)·(Z - z) = ε R²,      (Z - z)·z' = ± R R'
//! ```
//!
//! with `ε = -1` in Minkowski space and `ε = +1` in Euclidean space (the
//! Euclidean second equation carries a minus sign; differentiating the
//! first equation along `s` forces it, and the analytic normal would not
//! be normal otherwise). Every chart point carries exact order-three
//! jets in all chart parameters.

mod chart;
mod grid;
mod hypersphere;

pub use chart::{
    eval_chart, eval_chart_generator_only, eval_elliptic, eval_euclidean, eval_hyperbolic,
    eval_parabolic, ChartPoint,
};
pub use grid::{default_generator_ranges, sample_grid, Grid};
pub use hypersphere::{eval_parabolic_hypersphere, parabolic_hypersphere_chart};

use thiserror::Error;

use crate::exprlang::{chebyshev_nodes, validate_profile, ProfileSpec};
use crate::numkit::{causal_character, inner, AmbientVector, CausalCharacter, Signature};
use crate::scalar::Real;

/// Canal kind, keyed to the causal character of the center curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanalKind {
    /// Timelike center curve in Minkowski space.
    Elliptic,
    /// Spacelike center curve in Minkowski space.
    Hyperbolic,
    /// Lightlike center curve in Minkowski space.
    Parabolic,
    /// Unit-speed center curve in Euclidean space.
    Euclidean,
}

impl CanalKind {
    pub fn name(self) -> &'static str {
        match self {
            CanalKind::Elliptic => "elliptic",
            CanalKind::Hyperbolic => "hyperbolic",
            CanalKind::Parabolic => "parabolic",
            CanalKind::Euclidean => "euclidean",
        }
    }

    /// Expected causal character of the tangent (`None` in Euclidean space).
    pub fn expected_character(self) -> Option<CausalCharacter> {
        match self {
            CanalKind::Elliptic => Some(CausalCharacter::Timelike),
            CanalKind::Hyperbolic => Some(CausalCharacter::Spacelike),
            CanalKind::Parabolic => Some(CausalCharacter::Lightlike),
            CanalKind::Euclidean => None,
        }
    }

    /// Sign of the second envelope equation `(Z - z)·z' = sign · R R'`.
    pub fn tangency_sign(self) -> f64 {
        match self {
            CanalKind::Euclidean => -1.0,
            _ => 1.0,
        }
    }
}

impl std::fmt::Display for CanalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Intrinsic coordinates on a spherical generator.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorCoords<T> {
    /// Spherical angles (elliptic and Euclidean kinds): `n-1` angles on
    /// the unit sphere of the tangent complement.
    Sphere { angles: Vec<T> },
    /// Hyperboloid coordinates (hyperbolic kind): a boost parameter plus
    /// `n-2` angles.
    Hyperboloid { chi: T, angles: Vec<T> },
    /// Flat coordinates (parabolic kind): a point of `R^{n-1}`.
    Flat { w: Vec<T> },
}

impl<T: Real> GeneratorCoords<T> {
    /// Assembles coordinates from raw per-axis values, kind-dependently.
    pub fn from_axis_values(kind: CanalKind, values: &[T]) -> Self {
        match kind {
            CanalKind::Elliptic | CanalKind::Euclidean => GeneratorCoords::Sphere {
                angles: values.to_vec(),
            },
            CanalKind::Hyperbolic => GeneratorCoords::Hyperboloid {
                chi: values[0],
                angles: values[1..].to_vec(),
            },
            CanalKind::Parabolic => GeneratorCoords::Flat { w: values.to_vec() },
        }
    }

    pub fn axis_values(&self) -> Vec<T> {
        match self {
            GeneratorCoords::Sphere { angles } => angles.clone(),
            GeneratorCoords::Hyperboloid { chi, angles } => {
                let mut v = vec![*chi];
                v.extend_from_slice(angles);
                v
            }
            GeneratorCoords::Flat { w } => w.clone(),
        }
    }
}

/// Construction failures.
#[derive(Clone, Debug, Error)]
pub enum ConstructError {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("constraint violated at s = {s}: {constraint}")]
    Constraint { s: f64, constraint: String },
    #[error("degenerate construction: {0}")]
    Degenerate(String),
}

/// Declarative description of a hypersurface family.
#[derive(Clone, Debug)]
pub struct CanalSpec<T> {
    pub ambient: Signature,
    pub kind: CanalKind,
    pub center: Vec<ProfileSpec<T>>,
    pub radius: ProfileSpec<T>,
    pub s_domain: (T, T),
}

/// Outcome of whole-family validation.
#[derive(Clone, Copy, Debug)]
pub struct ValidationSummary {
    /// All center coordinates affine in `s` (straight center line).
    pub rotational: bool,
}

const UNIT_SPEED_TOL: f64 = 1e-9;
const CAUSAL_TOL: f64 = 1e-9;
const ROTATIONAL_TOL: f64 = 1e-12;

impl<T: Real> CanalSpec<T> {
    /// Hypersurface dimension `n` (ambient dimension is `n + 1`).
    pub fn hypersurface_dim(&self) -> usize {
        self.ambient.dim() - 1
    }

    /// Center position, tangent and curvature vector at `s` (plain values).
    fn center_data(&self, s: T) -> Result<[AmbientVector<T>; 3], ConstructError> {
        let mut z = Vec::with_capacity(self.ambient.dim());
        let mut t = Vec::with_capacity(self.ambient.dim());
        let mut tp = Vec::with_capacity(self.ambient.dim());
        for p in &self.center {
            let series = p.eval_taylor(s).map_err(|e| {
                ConstructError::Validation(format!("center profile `{}`: {}", p.source, e))
            })?;
            z.push(series.value());
            t.push(series.derivative(1));
            tp.push(series.derivative(2));
        }
        Ok([
            AmbientVector::new(z),
            AmbientVector::new(t),
            AmbientVector::new(tp),
        ])
    }

    /// Validates dimensions, kind/signature pairing, radius constraints,
    /// causal character and parametrization of the center curve at
    /// `samples` Chebyshev nodes. Also detects rotational families.
    pub fn validate(&self, samples: usize) -> Result<ValidationSummary, ConstructError> {
        let dim = self.ambient.dim();
        if dim < 3 {
            return Err(ConstructError::Validation(
                "ambient dimension must be at least 3".into(),
            ));
        }
        if self.center.len() != dim {
            return Err(ConstructError::Validation(format!(
                "center needs {dim} coordinate profiles, got {}",
                self.center.len()
            )));
        }
        let minkowski_kind = self.kind != CanalKind::Euclidean;
        if minkowski_kind != self.ambient.is_minkowski() {
            return Err(ConstructError::Validation(format!(
                "kind `{}` is incompatible with the {} ambient signature",
                self.kind,
                if self.ambient.is_minkowski() {
                    "Minkowski"
                } else {
                    "Euclidean"
                }
            )));
        }

        let rv = validate_profile(&self.radius, self.kind, samples);
        if let Some(v) = rv.first_violation {
            return Err(ConstructError::Constraint {
                s: v.s.to_f64().unwrap_or(f64::NAN),
                constraint: format!("radius profile: {}", v.constraint),
            });
        }

        let mut rotational = true;
        for s in chebyshev_nodes(self.s_domain.0, self.s_domain.1, samples) {
            let [z, t, tp] = self.center_data(s)?;
            if z.coords.iter().any(|c| !c.is_finite()) {
                return Err(ConstructError::Constraint {
                    s: s.to_f64().unwrap_or(f64::NAN),
                    constraint: "center curve is not finite".into(),
                });
            }
            let character = causal_character(&t, &self.ambient, T::of(CAUSAL_TOL))
                .map_err(|_| ConstructError::Constraint {
                    s: s.to_f64().unwrap_or(f64::NAN),
                    constraint: "center tangent vanishes".into(),
                })?;
            if let Some(expected) = self.kind.expected_character() {
                if character != expected {
                    return Err(ConstructError::Constraint {
                        s: s.to_f64().unwrap_or(f64::NAN),
                        constraint: format!(
                            "center tangent is {character}, expected {expected} for the {} kind",
                            self.kind
                        ),
                    });
                }
            }
            if self.kind != CanalKind::Parabolic {
                let speed = inner(&t, &t, &self.ambient).abs();
                if (speed - T::one()).abs() > T::of(UNIT_SPEED_TOL) {
                    return Err(ConstructError::Constraint {
                        s: s.to_f64().unwrap_or(f64::NAN),
                        constraint: format!(
                            "center curve is not unit-speed (|z'·z'| = {:?})",
                            speed
                        ),
                    });
                }
            }
            if tp.euclidean_square().sqrt() > T::of(ROTATIONAL_TOL) {
                rotational = false;
            }
        }
        Ok(ValidationSummary { rotational })
    }
}
