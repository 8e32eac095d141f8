//! Structure-preserving matching of two analyzed grids.
//!
//! An isometry between two detected structures must match `(a, b)` at
//! corresponding points and carry one structural direction to the other
//! up to sign. The correspondence is supplied as index pairs into the
//! two grids; chart components are compared with the target metric.

use crate::qclab::pipeline::GridAnalysis;
use crate::qclab::PipelineError;
use crate::scalar::Real;
use crate::tol::Tolerances;

/// Per-grid-pair verdict with the worst defects found.
#[derive(Clone, Debug)]
pub struct IsometryReport<T> {
    pub pass: bool,
    pub compared: usize,
    pub max_a_defect: T,
    pub max_b_defect: T,
    /// `1 - |cos|` between matched structural directions.
    pub max_cosine_defect: T,
}

/// Checks that matched points carry equal structure data and aligned
/// structural directions.
pub fn xi_isometry_check<T: Real>(
    ga: &GridAnalysis<T>,
    gb: &GridAnalysis<T>,
    correspondence: &[(usize, usize)],
    tols: &Tolerances,
) -> Result<IsometryReport<T>, PipelineError> {
    if correspondence.is_empty() {
        return Err(PipelineError::FieldsUnavailable(
            "empty point correspondence".into(),
        ));
    }
    let mut max_a = T::zero();
    let mut max_b = T::zero();
    let mut max_cos = T::zero();
    for &(ia, ib) in correspondence {
        if ia >= ga.points.len() || ib >= gb.points.len() {
            return Err(PipelineError::FieldsUnavailable(
                "correspondence index out of range".into(),
            ));
        }
        let (Some(da), Some(db)) = (ga.points[ia].qc.as_ref(), gb.points[ib].qc.as_ref()) else {
            return Err(PipelineError::FieldsUnavailable(
                "correspondence touches a point without detected structure".into(),
            ));
        };
        max_a = max_a.max((da.a - db.a).abs());
        max_b = max_b.max((da.b - db.b).abs());

        // Push ξ through the (chart-identity) correspondence and compare
        // with the target metric.
        let g = &gb.points[ib].curvature.metric.g;
        let n = g.len();
        let pair = |u: &[T], v: &[T]| {
            let mut acc = T::zero();
            for i in 0..n {
                for j in 0..n {
                    acc = acc + g[i][j] * u[i] * v[j];
                }
            }
            acc
        };
        let cos = pair(&da.xi, &db.xi)
            / (pair(&da.xi, &da.xi).sqrt() * pair(&db.xi, &db.xi).sqrt());
        max_cos = max_cos.max(T::one() - cos.abs());
    }
    let tol = T::of(tols.isometry);
    Ok(IsometryReport {
        pass: max_a <= tol && max_b <= tol && max_cos <= tol,
        compared: correspondence.len(),
        max_a_defect: max_a,
        max_b_defect: max_b,
        max_cosine_defect: max_cos,
    })
}
