//! Grid-level field diagnostics: finite-difference derivatives of the
//! detected fields and the residuals of the structure equations.
//!
//! Scalar fields that pass through the eigensolver (`a`, `b`, `k`, `τ`,
//! `ξ`, `η`) are differentiated with central stencils — fourth order
//! where an axis has five or more points, second order otherwise — and
//! residuals are evaluated only at points where the full stencil fits
//! on every axis. Metric derivatives are never stencilled: `g`, `g⁻¹`
//! and the connection come exactly from the jets.

use crate::curvature::Matrix;
use crate::qclab::pipeline::GridAnalysis;
use crate::qclab::{KEstimates, PipelineError, StructureResiduals};
use crate::scalar::Real;

struct Stencil<'a, T> {
    shape: &'a [usize],
    spacing: &'a [T],
}

impl<'a, T: Real> Stencil<'a, T> {
    fn margin(&self, axis: usize) -> usize {
        if self.shape[axis] >= 5 {
            2
        } else {
            1
        }
    }

    fn is_interior(&self, multi: &[usize]) -> bool {
        multi.iter().enumerate().all(|(axis, &m)| {
            let margin = self.margin(axis);
            m >= margin && m + margin < self.shape[axis]
        })
    }

    /// Central difference of a scalar field along `axis` at `multi`.
    fn partial(&self, f: &dyn Fn(&[usize]) -> T, multi: &[usize], axis: usize) -> T {
        let h = self.spacing[axis];
        let mut m = multi.to_vec();
        let at = |m: &mut Vec<usize>, offset: i64| {
            m[axis] = (multi[axis] as i64 + offset) as usize;
            f(m)
        };
        if self.margin(axis) == 2 {
            let f_p2 = at(&mut m, 2);
            let f_p1 = at(&mut m, 1);
            let f_m1 = at(&mut m, -1);
            let f_m2 = at(&mut m, -2);
            (-f_p2 + T::of(8.0) * f_p1 - T::of(8.0) * f_m1 + f_m2) / (T::of(12.0) * h)
        } else {
            let f_p1 = at(&mut m, 1);
            let f_m1 = at(&mut m, -1);
            (f_p1 - f_m1) / (T::of(2.0) * h)
        }
    }
}

fn covector_norm<T: Real>(g_inv: &Matrix<T>, d: &[T]) -> T {
    let n = d.len();
    let mut acc = T::zero();
    for m in 0..n {
        for p in 0..n {
            acc = acc + g_inv[m][p] * d[m] * d[p];
        }
    }
    acc.max(T::zero()).sqrt()
}

fn vector_norm<T: Real>(g: &Matrix<T>, v: &[T]) -> T {
    covector_norm(g, v)
}

fn require_qc<T: Real>(ga: &GridAnalysis<T>) -> Result<(), PipelineError> {
    if ga.points.iter().any(|p| p.qc.is_none()) {
        return Err(PipelineError::FieldsUnavailable(
            "grid contains points without detected structure".into(),
        ));
    }
    Ok(())
}

/// Umbilicity factor estimated two ways per point: directional
/// derivative `ξ(a)/(2b)` from grid stencils (interior points only) and
/// the jet-exact least-squares fit of `∇_x ξ = k x`.
pub fn estimate_k<T: Real>(ga: &GridAnalysis<T>) -> KEstimates<T> {
    let st = Stencil {
        shape: &ga.grid.shape,
        spacing: &ga.grid.spacing,
    };
    let n = ga.grid.axes();
    let a_field = |multi: &[usize]| -> T {
        ga.points[ga.grid.index_of(multi)]
            .qc
            .as_ref()
            .map(|d| d.a)
            .unwrap_or_else(T::nan)
    };
    let mut alpha = vec![None; ga.points.len()];
    let mut max_disc = T::zero();
    for idx in 0..ga.points.len() {
        let multi = ga.grid.multi_of(idx);
        if !st.is_interior(&multi) {
            continue;
        }
        let Some(dec) = ga.points[idx].qc.as_ref() else {
            continue;
        };
        let da: Vec<T> = (0..n).map(|ax| st.partial(&a_field, &multi, ax)).collect();
        let xi_a: T = dec
            .xi
            .iter()
            .zip(&da)
            .fold(T::zero(), |acc, (&x, &d)| acc + x * d);
        let k = xi_a / (T::of(2.0) * dec.b);
        alpha[idx] = Some(k);
        if !ga.points[idx].degenerate {
            max_disc = max_disc.max((k - ga.points[idx].k_beta).abs());
        }
    }
    KEstimates {
        alpha,
        beta: ga.points.iter().map(|p| p.k_beta).collect(),
        max_discrepancy: max_disc,
    }
}

/// Residuals of the structure equations and the subprojectivity
/// criteria, maximized over full-stencil interior points.
pub fn structure_residuals<T: Real>(
    ga: &GridAnalysis<T>,
) -> Result<StructureResiduals<T>, PipelineError> {
    if ga.grid.shape.iter().any(|&c| c < 3) {
        return Err(PipelineError::TooCoarse);
    }
    require_qc(ga)?;
    let st = Stencil {
        shape: &ga.grid.shape,
        spacing: &ga.grid.spacing,
    };
    let n = ga.grid.axes();

    let dec = |multi: &[usize]| ga.points[ga.grid.index_of(multi)].qc.as_ref().unwrap();
    let a_field = |m: &[usize]| dec(m).a;
    let b_field = |m: &[usize]| dec(m).b;
    let k_field = |m: &[usize]| ga.points[ga.grid.index_of(m)].k_beta;
    let xi_field = move |c: usize| move |m: &[usize]| dec(m).xi[c];
    let eta_field = |c: usize| {
        move |m: &[usize]| {
            let idx = ga.grid.index_of(m);
            let p = &ga.points[idx];
            let d = p.qc.as_ref().unwrap();
            let g = &p.curvature.metric.g;
            let mut acc = T::zero();
            for j in 0..d.xi.len() {
                acc = acc + g[c][j] * d.xi[j];
            }
            acc
        }
    };

    let mut out = StructureResiduals {
        r_da: T::zero(),
        r_deta_hor: T::zero(),
        r_theta: T::zero(),
        r_umb: T::zero(),
        r_dk: T::zero(),
        r_subproj_db: T::zero(),
        r_geodesic: T::zero(),
        r_deta_full: T::zero(),
        evaluated_points: 0,
    };

    for idx in 0..ga.points.len() {
        let multi = ga.grid.multi_of(idx);
        if !st.is_interior(&multi) {
            continue;
        }
        let point = &ga.points[idx];
        if point.degenerate {
            continue;
        }
        let d = point.qc.as_ref().unwrap();
        let g = &point.curvature.metric.g;
        let g_inv = &point.curvature.metric.g_inv;
        let gamma = &point.curvature.christoffels.gamma;
        let xi = &d.xi;
        let eta: Vec<T> = (0..n)
            .map(|c| {
                let mut acc = T::zero();
                for j in 0..n {
                    acc = acc + g[c][j] * xi[j];
                }
                acc
            })
            .collect();

        let da: Vec<T> = (0..n).map(|ax| st.partial(&a_field, &multi, ax)).collect();
        let db: Vec<T> = (0..n).map(|ax| st.partial(&b_field, &multi, ax)).collect();
        let dk: Vec<T> = (0..n).map(|ax| st.partial(&k_field, &multi, ax)).collect();

        // dξ[m][c] = ∂_m ξ^c and dη[m][c] = ∂_m η_c.
        let mut dxi = vec![vec![T::zero(); n]; n];
        let mut deta = vec![vec![T::zero(); n]; n];
        for c in 0..n {
            let fx = xi_field(c);
            let fe = eta_field(c);
            for ax in 0..n {
                dxi[ax][c] = st.partial(&fx, &multi, ax);
                deta[ax][c] = st.partial(&fe, &multi, ax);
            }
        }
        // Exterior derivative (dη)_{mp} = ∂_m η_p - ∂_p η_m.
        let mut deta2 = vec![vec![T::zero(); n]; n];
        for m in 0..n {
            for p in 0..n {
                deta2[m][p] = deta[m][p] - deta[p][m];
            }
        }
        // Covariant derivative ∇_m ξ^c = ∂_m ξ^c + Γ^c_{mp} ξ^p.
        let mut nabla_xi = vec![vec![T::zero(); n]; n];
        for m in 0..n {
            for c in 0..n {
                let mut acc = dxi[m][c];
                for p in 0..n {
                    acc = acc + gamma[c][m][p] * xi[p];
                }
                nabla_xi[m][c] = acc;
            }
        }

        let directional = |dcov: &[T], v: &[T]| -> T {
            dcov.iter()
                .zip(v)
                .fold(T::zero(), |acc, (&d, &x)| acc + d * x)
        };

        // (2.3)-style: the differential is proportional to η.
        let one_form_residual = |dcov: &[T]| -> T {
            let along_xi = directional(dcov, xi);
            let defect: Vec<T> = (0..n).map(|m| dcov[m] - along_xi * eta[m]).collect();
            covector_norm(g_inv, &defect)
        };
        out.r_da = out.r_da.max(one_form_residual(&da));
        out.r_dk = out.r_dk.max(one_form_residual(&dk));
        out.r_subproj_db = out.r_subproj_db.max(one_form_residual(&db));

        // Pairings with the horizontal eigenbasis.
        for x in &d.horizontal {
            // dη(x, y) = 0 for horizontal x, y.
            for y in &d.horizontal {
                let mut v = T::zero();
                for m in 0..n {
                    for p in 0..n {
                        v = v + x[m] * y[p] * deta2[m][p];
                    }
                }
                out.r_deta_hor = out.r_deta_hor.max(v.abs());
            }
            // b·dη(ξ, x) = db(x).
            let mut deta_xi_x = T::zero();
            for m in 0..n {
                for p in 0..n {
                    deta_xi_x = deta_xi_x + xi[m] * x[p] * deta2[m][p];
                }
            }
            let theta_defect = d.b * deta_xi_x - directional(&db, x);
            out.r_theta = out.r_theta.max(theta_defect.abs());

            // ∇_x ξ = k x with the jet-exact k.
            let k = point.k_beta;
            let mut defect = vec![T::zero(); n];
            for c in 0..n {
                let mut acc = T::zero();
                for m in 0..n {
                    acc = acc + x[m] * nabla_xi[m][c];
                }
                defect[c] = acc - k * x[c];
            }
            out.r_umb = out.r_umb.max(vector_norm(g, &defect));
        }

        // ∇_ξ ξ (geodesic criterion).
        let mut geo = vec![T::zero(); n];
        for c in 0..n {
            let mut acc = T::zero();
            for m in 0..n {
                acc = acc + xi[m] * nabla_xi[m][c];
            }
            geo[c] = acc;
        }
        out.r_geodesic = out.r_geodesic.max(vector_norm(g, &geo));

        // ‖dη‖ as a 2-form.
        let mut full = T::zero();
        for m in 0..n {
            for p in 0..n {
                for mm in 0..n {
                    for pp in 0..n {
                        full = full
                            + g_inv[m][mm] * g_inv[p][pp] * deta2[m][p] * deta2[mm][pp];
                    }
                }
            }
        }
        out.r_deta_full = out
            .r_deta_full
            .max((full.max(T::zero()) * T::of(0.5)).sqrt());

        out.evaluated_points += 1;
    }

    if out.evaluated_points == 0 {
        return Err(PipelineError::FieldsUnavailable(
            "no full-stencil interior points".into(),
        ));
    }
    Ok(out)
}

/// Max Codazzi defect of the synthetic tensor `h = α g + β η⊗η`,
/// evaluated over metric-orthonormal basis triples at interior points.
///
/// `b_override` lets verification fixtures corrupt the coefficient
/// field before the tensor is assembled.
pub fn codazzi_residual<T: Real>(
    ga: &GridAnalysis<T>,
    b_override: Option<&(dyn Fn(usize, T) -> T + Sync)>,
) -> Result<T, PipelineError> {
    if ga.grid.shape.iter().any(|&c| c < 3) {
        return Err(PipelineError::TooCoarse);
    }
    require_qc(ga)?;
    let minkowski = ga.grid.points[0].sig.is_minkowski();
    for p in &ga.points {
        let a = p.qc.as_ref().unwrap().a;
        if minkowski && a >= T::zero() {
            return Err(PipelineError::FieldsUnavailable(
                "Minkowski branch needs negative horizontal curvature everywhere".into(),
            ));
        }
        if !minkowski && a <= T::zero() {
            return Err(PipelineError::FieldsUnavailable(
                "Euclidean branch needs positive horizontal curvature everywhere".into(),
            ));
        }
    }

    let st = Stencil {
        shape: &ga.grid.shape,
        spacing: &ga.grid.spacing,
    };
    let n = ga.grid.axes();

    let b_at = |idx: usize| -> T {
        let b = ga.points[idx].qc.as_ref().unwrap().b;
        match b_override {
            Some(f) => f(idx, b),
            None => b,
        }
    };
    let alpha_field = |m: &[usize]| -> T {
        let idx = ga.grid.index_of(m);
        ga.points[idx].qc.as_ref().unwrap().a.abs().sqrt()
    };
    let beta_field = |m: &[usize]| -> T {
        let idx = ga.grid.index_of(m);
        let a = ga.points[idx].qc.as_ref().unwrap().a;
        let alpha = a.abs().sqrt();
        let b = b_at(idx);
        if minkowski {
            -b / alpha
        } else {
            b / alpha
        }
    };
    let eta_field = |c: usize| {
        move |m: &[usize]| {
            let idx = ga.grid.index_of(m);
            let p = &ga.points[idx];
            let d = p.qc.as_ref().unwrap();
            let g = &p.curvature.metric.g;
            let mut acc = T::zero();
            for j in 0..d.xi.len() {
                acc = acc + g[c][j] * d.xi[j];
            }
            acc
        }
    };

    let mut worst = T::zero();
    let mut evaluated = 0usize;
    for idx in 0..ga.points.len() {
        let multi = ga.grid.multi_of(idx);
        if !st.is_interior(&multi) || ga.points[idx].degenerate {
            continue;
        }
        let point = &ga.points[idx];
        let d = point.qc.as_ref().unwrap();
        let g = &point.curvature.metric.g;
        let gamma = &point.curvature.christoffels.gamma;
        let xi = &d.xi;
        let eta: Vec<T> = (0..n)
            .map(|c| {
                let mut acc = T::zero();
                for j in 0..n {
                    acc = acc + g[c][j] * xi[j];
                }
                acc
            })
            .collect();
        let beta_here = beta_field(&multi);

        let dalpha: Vec<T> = (0..n)
            .map(|ax| st.partial(&alpha_field, &multi, ax))
            .collect();
        let dbeta: Vec<T> = (0..n)
            .map(|ax| st.partial(&beta_field, &multi, ax))
            .collect();
        let mut deta = vec![vec![T::zero(); n]; n];
        for c in 0..n {
            let fe = eta_field(c);
            for ax in 0..n {
                deta[ax][c] = st.partial(&fe, &multi, ax);
            }
        }
        // (∇_m η)_p = ∂_m η_p - Γ^r_{mp} η_r.
        let mut nabla_eta = vec![vec![T::zero(); n]; n];
        for m in 0..n {
            for p in 0..n {
                let mut acc = deta[m][p];
                for r in 0..n {
                    acc = acc - gamma[r][m][p] * eta[r];
                }
                nabla_eta[m][p] = acc;
            }
        }
        // (∇_m h)_pq; the α·∇g term vanishes identically for the
        // Levi-Civita connection of the jet-exact metric.
        let nabla_h = |m: usize, p: usize, q: usize| -> T {
            dalpha[m] * g[p][q]
                + dbeta[m] * eta[p] * eta[q]
                + beta_here * (nabla_eta[m][p] * eta[q] + eta[p] * nabla_eta[m][q])
        };

        // Full orthonormal basis: horizontal eigenvectors plus ξ.
        let mut basis: Vec<&Vec<T>> = d.horizontal.iter().collect();
        basis.push(xi);
        for u in &basis {
            for v in &basis {
                for w in &basis {
                    let mut defect = T::zero();
                    for m in 0..n {
                        for p in 0..n {
                            for q in 0..n {
                                defect = defect
                                    + (nabla_h(m, p, q) - nabla_h(p, m, q))
                                        * u[m]
                                        * v[p]
                                        * w[q];
                            }
                        }
                    }
                    worst = worst.max(defect.abs());
                }
            }
        }
        evaluated += 1;
    }
    if evaluated == 0 {
        return Err(PipelineError::FieldsUnavailable(
            "no full-stencil interior points".into(),
        ));
    }
    Ok(worst)
}

/// Max cosine defect between the stencilled gradient of the scalar
/// curvature and the structural direction, over interior points where
/// the gradient is meaningfully nonzero.
pub fn grad_tau_alignment<T: Real>(ga: &GridAnalysis<T>) -> Option<T> {
    let st = Stencil {
        shape: &ga.grid.shape,
        spacing: &ga.grid.spacing,
    };
    let n = ga.grid.axes();
    let tau_field = |m: &[usize]| ga.points[ga.grid.index_of(m)].curvature.ricci.scalar;
    let mut worst: Option<T> = None;
    for idx in 0..ga.points.len() {
        let multi = ga.grid.multi_of(idx);
        if !st.is_interior(&multi) || ga.points[idx].degenerate {
            continue;
        }
        let Some(dec) = ga.points[idx].qc.as_ref() else {
            continue;
        };
        let g = &ga.points[idx].curvature.metric.g;
        let g_inv = &ga.points[idx].curvature.metric.g_inv;
        let dtau: Vec<T> = (0..n)
            .map(|ax| st.partial(&tau_field, &multi, ax))
            .collect();
        let mut grad = vec![T::zero(); n];
        for m in 0..n {
            for c in 0..n {
                grad[m] = grad[m] + g_inv[m][c] * dtau[c];
            }
        }
        let norm = vector_norm(g, &grad);
        if norm < T::of(1e-6) {
            continue;
        }
        let mut cos = T::zero();
        for m in 0..n {
            for c in 0..n {
                cos = cos + g[m][c] * grad[m] * dec.xi[c];
            }
        }
        let defect = (T::one() - (cos / norm).abs()).max(T::zero());
        worst = Some(worst.map_or(defect, |w: T| w.max(defect)));
    }
    worst
}
