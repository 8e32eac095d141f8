//! Intrinsic geometry of a spherical generator at fixed `s`.

use crate::curvature::intrinsic::{christoffel, riemann_intrinsic, sectional_curvature};
use crate::curvature::metric::induced_metric_from_jets;
use crate::curvature::CurvatureError;
use crate::scalar::Real;
use crate::shapes::{eval_chart_generator_only, CanalSpec, GeneratorCoords};

/// Constant sectional curvature of the generator submanifold through the
/// given point, computed by restricting the chart to fixed `s`.
pub fn generator_curvature<T: Real>(
    spec: &CanalSpec<T>,
    s: T,
    gen: &GeneratorCoords<T>,
) -> Result<T, CurvatureError> {
    let n = spec.hypersurface_dim();
    if n < 3 {
        return Err(CurvatureError::Degenerate(
            "generator curvature needs at least a two-dimensional generator".into(),
        ));
    }
    let point = eval_chart_generator_only(spec, s, gen)?;
    let m = induced_metric_from_jets(&point.jets, &point.sig)?;
    let ch = christoffel(&m);
    let riem = riemann_intrinsic(&m, &ch);
    let k = m.n;
    let mut u = vec![T::zero(); k];
    let mut v = vec![T::zero(); k];
    u[0] = T::one();
    v[1] = T::one();
    sectional_curvature(&riem, &m.g, &u, &v)
}
