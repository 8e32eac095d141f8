//! First fundamental form with two exact derivative levels.

use crate::curvature::{CurvatureError, Matrix, T3, T4};
use crate::numkit::linalg::spd_inverse;
use crate::numkit::{Jet, Signature};
use crate::scalar::Real;

/// Induced metric `g_ij = ⟨Z_i, Z_j⟩` together with its first and second
/// coordinate derivatives, extracted from the order-three position jet.
#[derive(Clone, Debug)]
pub struct MetricJet<T> {
    pub n: usize,
    pub g: Matrix<T>,
    pub g_inv: Matrix<T>,
    /// `dg[k][i][j] = ∂_k g_ij`
    pub dg: T3<T>,
    /// `ddg[k][l][i][j] = ∂_k ∂_l g_ij`
    pub ddg: T4<T>,
}

/// Builds the metric jet of a chart given the ambient coordinate jets.
///
/// Fails when the induced form is not positive definite (the chart does
/// not describe a space-like immersion there).
pub fn induced_metric_from_jets<T: Real>(
    jets: &[Jet<T>],
    sig: &Signature,
) -> Result<MetricJet<T>, CurvatureError> {
    assert_eq!(jets.len(), sig.dim(), "one jet per ambient coordinate");
    let n = jets[0].vars();
    let dim = sig.dim();
    let sign = |a: usize| T::of(sig.axis_sign(a) as f64);

    let mut g = vec![vec![T::zero(); n]; n];
    let mut dg = vec![vec![vec![T::zero(); n]; n]; n];
    let mut ddg = vec![vec![vec![vec![T::zero(); n]; n]; n]; n];

    for i in 0..n {
        for j in 0..n {
            let mut acc = T::zero();
            for a in 0..dim {
                acc = acc + sign(a) * jets[a].deriv1(i) * jets[a].deriv1(j);
            }
            g[i][j] = acc;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for a in 0..dim {
                    acc = acc
                        + sign(a)
                            * (jets[a].deriv2(k, i) * jets[a].deriv1(j)
                                + jets[a].deriv1(i) * jets[a].deriv2(k, j));
                }
                dg[k][i][j] = acc;
            }
        }
    }
    for k in 0..n {
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = T::zero();
                    for a in 0..dim {
                        acc = acc
                            + sign(a)
                                * (jets[a].deriv3(k, l, i) * jets[a].deriv1(j)
                                    + jets[a].deriv2(l, i) * jets[a].deriv2(k, j)
                                    + jets[a].deriv2(k, i) * jets[a].deriv2(l, j)
                                    + jets[a].deriv1(i) * jets[a].deriv3(k, l, j));
                    }
                    ddg[k][l][i][j] = acc;
                }
            }
        }
    }

    let g_inv = spd_inverse(&g).ok_or_else(|| {
        CurvatureError::NotPositiveDefinite(
            "induced metric is not positive definite".into(),
        )
    })?;

    Ok(MetricJet {
        n,
        g,
        g_inv,
        dg,
        ddg,
    })
}
