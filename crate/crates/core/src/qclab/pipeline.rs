//! Grid-level analysis driver: construct, analyze and cross-check every
//! point of a sampled chart, then attach grid-level field diagnostics.
//!
//! The per-point phase is pure and runs in parallel with deterministic
//! assembly by index; the stencil phase (structure equations, Codazzi,
//! umbilicity estimates) runs afterwards on the completed grid.

use rayon::prelude::*;

use crate::curvature::{curvature_data, CurvatureData};
use crate::numkit::{inner, AmbientVector, Jet};
use crate::qclab::classify::classify_qc;
use crate::qclab::detect::{detect_qc, QCDecomposition, QcOutcome};
use crate::qclab::embed::{recover_embedding, EmbeddingData};
use crate::qclab::fields::{codazzi_residual, estimate_k, structure_residuals};
use crate::qclab::{KEstimates, PipelineError, StructureResiduals};
use crate::scalar::{GeomScalar, Real};
use crate::shapes::{sample_grid, CanalSpec, Grid};
use crate::tol::Tolerances;

/// Everything computed at one grid point.
#[derive(Clone, Debug)]
pub struct PointAnalysis<T> {
    pub curvature: CurvatureData<T>,
    /// Detected structure; `None` when detection rejected the point.
    pub qc: Option<QCDecomposition<T>>,
    /// Constant-curvature value when the spectrum is uniform.
    pub constant_curvature: Option<T>,
    /// Diagnostic when the point is not of the structural form.
    pub not_qc: Option<String>,
    /// Structural direction built from chart data, as ambient jets.
    pub xi_constructed: AmbientVector<Jet<T>>,
    /// `1 - |cos|` between the detected and constructed directions.
    pub xi_cosine_defect: Option<T>,
    /// Jet-exact least-squares umbilicity factor from `∇_x ξ = k x`.
    pub k_beta: T,
    /// Regularity denominator `⟨ξ, Z_s⟩`.
    pub xi_z_s: T,
    /// Point excluded from aggregates (denominator below floor).
    pub degenerate: bool,
    pub embedding: Option<EmbeddingData<T>>,
    /// Defects of the two envelope equations.
    pub envelope: (T, T),
    /// Max of normal-tangency defects and the unit-square defect.
    pub normal_defect: T,
}

impl<T: Real> PointAnalysis<T> {
    pub fn is_qc(&self) -> bool {
        self.qc.is_some()
    }
}

/// A fully analyzed grid.
#[derive(Clone, Debug)]
pub struct GridAnalysis<T> {
    pub grid: Grid<T>,
    pub points: Vec<PointAnalysis<T>>,
    pub tols: Tolerances,
    pub structure: Option<StructureResiduals<T>>,
    pub k_estimates: Option<KEstimates<T>>,
    pub codazzi: Option<T>,
    /// Max cosine defect between the scalar-curvature gradient and ξ.
    pub grad_tau_defect: Option<T>,
}

fn analyze_point<T: Real>(
    point_idx: usize,
    grid: &Grid<T>,
    tols: &Tolerances,
) -> Result<PointAnalysis<T>, PipelineError> {
    let point = &grid.points[point_idx];
    let cd = curvature_data(point).map_err(|e| PipelineError::Degenerate {
        index: grid.multi_of(point_idx),
        message: e.to_string(),
    })?;

    // Constructed structural direction ξ ∝ t - R'·N as ambient jets.
    let (_, rp) = point.radius_jets();
    let raw = point
        .tangent_jets()
        .coords
        .iter()
        .zip(&cd.normal_jets.coords)
        .map(|(t, nj)| t - &(rp * nj))
        .collect::<Vec<_>>();
    let raw = AmbientVector::new(raw);
    let q = inner(&raw, &raw, &point.sig);
    if q.base() <= T::zero() {
        return Err(PipelineError::Degenerate {
            index: grid.multi_of(point_idx),
            message: "structural direction is not spacelike".into(),
        });
    }
    let norm = q.sqrt_pos();
    let xi_constructed = raw.scale(&(&norm.lift(T::one()) / &norm));

    // Regularity denominator ⟨ξ, Z_s⟩ (axis 0 is s on full charts).
    let z_s = AmbientVector::new(
        point
            .jets
            .iter()
            .map(|j| j.deriv1(0))
            .collect::<Vec<_>>(),
    );
    let xi_values = xi_constructed.values();
    let xi_z_s = inner(&xi_values, &z_s, &point.sig);
    let degenerate = xi_z_s.abs() < T::of(tols.degenerate_floor);

    // Jet-exact least-squares fit of ∇_x ξ = k x over the generator
    // directions (they span the horizontal distribution).
    let n = point.chart_dim();
    let mut num = T::zero();
    let mut den = T::zero();
    for i in 1..n {
        let dxi = AmbientVector::new(
            xi_constructed
                .coords
                .iter()
                .map(|c| c.differentiate(i).value())
                .collect::<Vec<_>>(),
        );
        let z_i = AmbientVector::new(
            point
                .jets
                .iter()
                .map(|j| j.deriv1(i))
                .collect::<Vec<_>>(),
        );
        num = num + inner(&dxi, &z_i, &point.sig);
        den = den + inner(&z_i, &z_i, &point.sig);
    }
    let k_beta = num / den;

    // Envelope and normal diagnostics.
    let envelope = point.envelope_defects();
    let mut normal_defect = (inner(&cd.normal, &cd.normal, &point.sig).abs() - T::one()).abs();
    for m in 0..n {
        let z_m = AmbientVector::new(
            point
                .jets
                .iter()
                .map(|j| j.deriv1(m))
                .collect::<Vec<_>>(),
        );
        normal_defect = normal_defect.max(inner(&cd.normal, &z_m, &point.sig).abs());
    }

    // Detection and sign alignment with the constructed direction.
    let mut qc = None;
    let mut constant_curvature = None;
    let mut not_qc = None;
    let mut xi_cosine_defect = None;
    let mut embedding = None;
    match detect_qc(&cd, tols) {
        Ok(QcOutcome::Qc(mut dec)) => {
            // Detected ξ is in chart components; push to ambient.
            let mut xi_amb = AmbientVector::new(vec![T::zero(); point.sig.dim()]);
            for (m, &c) in dec.xi.iter().enumerate() {
                let z_m = AmbientVector::new(
                    point
                        .jets
                        .iter()
                        .map(|j| j.deriv1(m))
                        .collect::<Vec<_>>(),
                );
                xi_amb = &xi_amb + &z_m.scale(&c);
            }
            let cos = inner(&xi_amb, &xi_values, &point.sig);
            if cos < T::zero() {
                for c in dec.xi.iter_mut() {
                    *c = -*c;
                }
            }
            xi_cosine_defect = Some(T::one() - cos.abs());
            dec.k = Some(k_beta);
            dec.class = Some(classify_qc(dec.a, k_beta, T::of(tols.sign_zero)));
            if !degenerate {
                match recover_embedding(point, &dec, &cd) {
                    Ok(e) => embedding = Some(e),
                    Err(e) => not_qc = Some(format!("embedding recovery: {e}")),
                }
            }
            qc = Some(dec);
        }
        Ok(QcOutcome::ConstantCurvature { a }) => {
            constant_curvature = Some(a);
        }
        Err(e) => {
            not_qc = Some(e.to_string());
        }
    }

    Ok(PointAnalysis {
        curvature: cd,
        qc,
        constant_curvature,
        not_qc,
        xi_constructed,
        xi_cosine_defect,
        k_beta,
        xi_z_s,
        degenerate,
        embedding,
        envelope,
        normal_defect,
    })
}

/// Runs the full analysis pipeline over a sampled grid.
pub fn analyze_grid<T: Real>(
    spec: &CanalSpec<T>,
    resolution: &[usize],
    tols: &Tolerances,
) -> Result<GridAnalysis<T>, PipelineError> {
    let grid = sample_grid(spec, resolution)?;
    analyze_sampled_grid(grid, tols)
}

/// Analysis phase over an already sampled grid.
pub fn analyze_sampled_grid<T: Real>(
    grid: Grid<T>,
    tols: &Tolerances,
) -> Result<GridAnalysis<T>, PipelineError> {
    let points: Result<Vec<PointAnalysis<T>>, PipelineError> = (0..grid.len())
        .into_par_iter()
        .map(|idx| analyze_point(idx, &grid, tols))
        .collect();
    let points = points?;

    let mut ga = GridAnalysis {
        grid,
        points,
        tols: *tols,
        structure: None,
        k_estimates: None,
        codazzi: None,
        grad_tau_defect: None,
    };

    // Grid-level passes need complete neighborhoods; they are skipped on
    // grids too coarse for stencils.
    if ga.grid.shape.iter().all(|&c| c >= 3) && ga.points.iter().all(|p| p.is_qc()) {
        ga.k_estimates = Some(estimate_k(&ga));
        ga.structure = Some(structure_residuals(&ga)?);
        ga.codazzi = Some(codazzi_residual(&ga, None)?);
        ga.grad_tau_defect = crate::qclab::fields::grad_tau_alignment(&ga);
    }
    Ok(ga)
}

impl<T: Real> GridAnalysis<T> {
    /// Max fit residual over non-degenerate detected points.
    pub fn max_fit_residual(&self) -> Option<T> {
        self.points
            .iter()
            .filter(|p| !p.degenerate)
            .filter_map(|p| p.qc.as_ref().map(|d| d.fit_residual))
            .fold(None, |acc, v| Some(acc.map_or(v, |a: T| a.max(v))))
    }

    /// Max relative Weyl norm over analyzed points.
    pub fn max_weyl(&self) -> Option<T> {
        self.points
            .iter()
            .filter_map(|p| p.curvature.weyl_rel)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: T| a.max(v))))
    }

    /// Max Gauss-equation residual.
    pub fn max_gauss(&self) -> T {
        self.points
            .iter()
            .map(|p| p.curvature.gauss_residual)
            .fold(T::zero(), |a, v| a.max(v))
    }

    /// Max envelope defects over the grid.
    pub fn max_envelope(&self) -> (T, T) {
        self.points.iter().fold((T::zero(), T::zero()), |acc, p| {
            (acc.0.max(p.envelope.0), acc.1.max(p.envelope.1))
        })
    }

    /// Max normal-orthogonality defect.
    pub fn max_normal_defect(&self) -> T {
        self.points
            .iter()
            .map(|p| p.normal_defect)
            .fold(T::zero(), |a, v| a.max(v))
    }

    /// Max cosine defect between detected and constructed directions.
    pub fn max_xi_cosine_defect(&self) -> Option<T> {
        self.points
            .iter()
            .filter(|p| !p.degenerate)
            .filter_map(|p| p.xi_cosine_defect)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: T| a.max(v))))
    }
}
