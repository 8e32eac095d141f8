//! Detection of quasi-constant-curvature structure from a Ricci
//! spectrum and reconstruction of the defining data.
//!
//! The detection keys on the Ricci multiplicity pattern: an eigenvalue
//! of multiplicity `n-1` (generating the horizontal distribution) plus a
//! simple one (generating `ξ`). From the two roots,
//! `λ_Δ = (n-1)a + b` and `λ_ξ = (n-1)(a + b)`, the coefficients are
//!
//! ```text
//! b = (λ_ξ - λ_Δ)/(n - 2),     a = (λ_Δ - b)/(n - 1).
//! ```
//!
//! Zero roots are allowed; the multiplicity pattern plus the fit
//! residual are the operative tests, and a vanishing simple root only
//! attaches a boundary-case note.

use crate::curvature::CurvatureData;
use crate::numkit::linalg::frobenius4;
use crate::qclab::synthetic::qc_tensor;
use crate::qclab::{QcClass, QcError};
use crate::scalar::Real;
use crate::tol::Tolerances;

/// Recovered quasi-constant-curvature data at a point.
#[derive(Clone, Debug)]
pub struct QCDecomposition<T> {
    /// Horizontal sectional curvature.
    pub a: T,
    /// Structural coefficient of `Φ`.
    pub b: T,
    /// Structural direction in chart components, metric-unit.
    pub xi: Vec<T>,
    /// Metric-orthonormal basis of the horizontal eigenspace.
    pub horizontal: Vec<Vec<T>>,
    /// Relative norm of `R - aπ - bΦ`.
    pub fit_residual: T,
    /// Ricci root on the horizontal distribution, `(n-1)a + b`.
    pub lambda_delta: T,
    /// Simple Ricci root, `(n-1)(a + b)`.
    pub lambda_xi: T,
    /// Simple root within clustering width of zero (boundary case).
    pub simple_root_near_zero: bool,
    /// Umbilicity factor; filled by grid-level estimation.
    pub k: Option<T>,
    /// Class label; filled once `k` is known.
    pub class: Option<QcClass>,
}

/// Detection outcome for a valid curvature tensor.
#[derive(Clone, Debug)]
pub enum QcOutcome<T> {
    Qc(QCDecomposition<T>),
    /// All Ricci roots coincide: constant sectional curvature, `ξ` undefined.
    ConstantCurvature { a: T },
}

/// Clusters the Ricci spectrum and recovers `(a, b, ξ)`.
pub fn detect_qc<T: Real>(
    cd: &CurvatureData<T>,
    tols: &Tolerances,
) -> Result<QcOutcome<T>, QcError> {
    let n = cd.n;
    if n < 4 {
        return Err(QcError::DimensionTooSmall { n });
    }
    let nf = T::of(n as f64);
    let spectrum = &cd.ricci.spectrum;
    let values: Vec<T> = spectrum.iter().map(|p| p.value).collect();
    let scale = values
        .iter()
        .fold(T::zero(), |acc, v| acc.max(v.abs()))
        .max(T::one());
    let ctol = T::of(tols.cluster_rel) * scale;

    let all_spread = values[n - 1] - values[0];
    if all_spread <= ctol {
        let mean = values.iter().fold(T::zero(), |a, &v| a + v) / nf;
        return Ok(QcOutcome::ConstantCurvature {
            a: mean / (nf - T::one()),
        });
    }

    // The simple root sits at one end of the sorted spectrum.
    let spread_low = values[n - 2] - values[0];
    let spread_high = values[n - 1] - values[1];
    let low_valid = spread_low <= ctol && values[n - 1] - values[n - 2] > ctol;
    let high_valid = spread_high <= ctol && values[1] - values[0] > ctol;
    let simple_last = match (low_valid, high_valid) {
        (true, false) => true,
        (false, true) => false,
        (true, true) => spread_low <= spread_high,
        (false, false) => {
            return Err(QcError::WrongMultiplicity {
                spectrum: values
                    .iter()
                    .map(|v| v.to_f64().unwrap_or(f64::NAN))
                    .collect(),
            })
        }
    };

    let (cluster, simple_idx): (Vec<usize>, usize) = if simple_last {
        ((0..n - 1).collect(), n - 1)
    } else {
        ((1..n).collect(), 0)
    };
    let lambda_delta = cluster
        .iter()
        .fold(T::zero(), |acc, &i| acc + values[i])
        / (nf - T::one());
    let lambda_xi = values[simple_idx];

    let b = (lambda_xi - lambda_delta) / (nf - T::of(2.0));
    let a = (lambda_delta - b) / (nf - T::one());

    if b.abs() < T::of(tols.b_floor) * scale {
        return Ok(QcOutcome::ConstantCurvature { a });
    }

    let xi = spectrum[simple_idx].vector.clone();
    let horizontal: Vec<Vec<T>> = cluster
        .iter()
        .map(|&i| spectrum[i].vector.clone())
        .collect();

    let synth = qc_tensor(&cd.metric.g, &xi, a, b);
    let mut defect = synth;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    defect[i][j][k][l] = cd.riemann[i][j][k][l] - defect[i][j][k][l];
                }
            }
        }
    }
    let fit_residual = frobenius4(&defect) / cd.riemann_norm.max(T::of(1e-12));
    if fit_residual > T::of(tols.qc_fit) {
        return Err(QcError::ResidualTooLarge {
            residual: fit_residual.to_f64().unwrap_or(f64::NAN),
            tol: tols.qc_fit,
        });
    }

    Ok(QcOutcome::Qc(QCDecomposition {
        a,
        b,
        xi,
        horizontal,
        fit_residual,
        lambda_delta,
        lambda_xi,
        simple_root_near_zero: lambda_xi.abs() <= ctol,
        k: None,
        class: None,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{sym_eigen, SymOperator};

    /// Builds curvature data directly from a synthetic tensor on a flat
    /// metric, bypassing any chart (detection-only fixture).
    fn synthetic_cd(a: f64, b: f64, xi: &[f64], n: usize) -> CurvatureData<f64> {
        use crate::curvature::{ricci_data, MetricJet};
        let mut g = vec![vec![0.0; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let riemann = qc_tensor(&g, xi, a, b);
        let metric = MetricJet {
            n,
            g: g.clone(),
            g_inv: g.clone(),
            dg: vec![vec![vec![0.0; n]; n]; n],
            ddg: vec![vec![vec![vec![0.0; n]; n]; n]; n],
        };
        let ricci = ricci_data(&metric, &riemann).unwrap();
        let riemann_norm = crate::numkit::linalg::frobenius4(&riemann);
        let weyl = crate::curvature::weyl_tensor(&metric, &riemann, &ricci.ricci, ricci.scalar);
        let weyl_rel = weyl
            .as_ref()
            .map(|w| crate::numkit::linalg::frobenius4(w) / riemann_norm.max(1e-12));
        let shape = SymOperator::identity(n);
        let shape_spectrum = sym_eigen(&shape, &g).unwrap();
        CurvatureData {
            n,
            metric,
            christoffels: crate::curvature::Christoffels {
                gamma: vec![vec![vec![0.0; n]; n]; n],
                dgamma: vec![vec![vec![vec![0.0; n]; n]; n]; n],
            },
            riemann,
            riemann_norm,
            ricci,
            weyl,
            weyl_rel,
            normal: crate::numkit::AmbientVector::from_f64(&vec![0.0; n + 1]),
            normal_jets: crate::numkit::AmbientVector::new(vec![
                crate::numkit::Jet::constant(n, 0.0);
                n + 1
            ]),
            eps: -1,
            second_ff: vec![vec![0.0; n]; n],
            shape: SymOperator::identity(n),
            shape_spectrum,
            gauss_residual: 0.0,
        }
    }

    #[test]
    fn recovers_synthetic_coefficients() {
        // a = -1, b = 0.6, n = 4: Ricci roots -2.4 (×3) and -1.2.
        let cd = synthetic_cd(-1.0, 0.6, &[0.0, 0.0, 0.0, 1.0], 4);
        let vals: Vec<f64> = cd.ricci.spectrum.iter().map(|p| p.value).collect();
        assert!((vals[0] + 2.4).abs() < 1e-12 && (vals[3] + 1.2).abs() < 1e-12);
        match detect_qc(&cd, &Tolerances::default()).unwrap() {
            QcOutcome::Qc(dec) => {
                assert!((dec.a + 1.0).abs() < 1e-12);
                assert!((dec.b - 0.6).abs() < 1e-12);
                assert!(dec.fit_residual < 1e-12);
                assert!((dec.xi[3].abs() - 1.0).abs() < 1e-10);
            }
            other => panic!("expected detection, got {other:?}"),
        }
    }

    #[test]
    fn constant_curvature_signalled() {
        let cd = synthetic_cd(-0.5, 0.0, &[0.0, 0.0, 0.0, 1.0], 4);
        match detect_qc(&cd, &Tolerances::default()).unwrap() {
            QcOutcome::ConstantCurvature { a } => assert!((a + 0.5).abs() < 1e-12),
            other => panic!("expected constant curvature, got {other:?}"),
        }
    }

    #[test]
    fn wrong_multiplicity_rejected() {
        // Spectrum pattern (2, 2) cannot come from the structural form.
        let mut cd = synthetic_cd(-1.0, 0.6, &[0.0, 0.0, 0.0, 1.0], 4);
        for (i, v) in [1.0, 1.0, 2.0, 2.0].into_iter().enumerate() {
            cd.ricci.spectrum[i].value = v;
        }
        assert!(matches!(
            detect_qc(&cd, &Tolerances::default()),
            Err(QcError::WrongMultiplicity { .. })
        ));
    }
}
