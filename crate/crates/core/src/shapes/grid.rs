//! Deterministic tensor grids over chart parameters.
//!
//! Axis 0 is the family parameter `s`; the remaining axes are generator
//! coordinates. Points are produced in lexicographic order of the grid
//! multi-index (axis 0 slowest), so identical inputs give bitwise
//! identical grids. Generator windows default to narrow ranges clear of
//! chart singularities; verification stencils want small spacings far
//! more than they want coverage.

use crate::scalar::Real;
use crate::shapes::chart::{eval_from_slice, slice_data, ChartPoint};
use crate::shapes::{CanalKind, CanalSpec, ConstructError, GeneratorCoords};

/// Default coordinate windows for generator axes.
pub fn default_generator_ranges(kind: CanalKind, n: usize) -> Vec<(f64, f64)> {
    use std::f64::consts::FRAC_PI_2;
    const HALF_WIDTH: f64 = 0.08;
    let angle = (FRAC_PI_2 - HALF_WIDTH, FRAC_PI_2 + HALF_WIDTH);
    match kind {
        CanalKind::Elliptic | CanalKind::Euclidean => vec![angle; n - 1],
        CanalKind::Hyperbolic => {
            let mut r = vec![(1.0 - HALF_WIDTH, 1.0 + HALF_WIDTH)];
            r.extend(vec![angle; n - 2]);
            r
        }
        CanalKind::Parabolic => vec![(-HALF_WIDTH, HALF_WIDTH); n - 1],
    }
}

/// A sampled chart with uniform spacing per axis.
#[derive(Clone, Debug)]
pub struct Grid<T> {
    pub kind: CanalKind,
    pub shape: Vec<usize>,
    pub spacing: Vec<T>,
    pub axis_values: Vec<Vec<T>>,
    pub points: Vec<ChartPoint<T>>,
    pub rotational: bool,
}

impl<T: Real> Grid<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn axes(&self) -> usize {
        self.shape.len()
    }

    /// Flat index of a multi-index (axis 0 slowest).
    pub fn index_of(&self, multi: &[usize]) -> usize {
        let mut idx = 0;
        for (m, &count) in multi.iter().zip(&self.shape) {
            debug_assert!(*m < count);
            idx = idx * count + m;
        }
        idx
    }

    /// Multi-index of a flat index.
    pub fn multi_of(&self, mut idx: usize) -> Vec<usize> {
        let mut multi = vec![0; self.shape.len()];
        for axis in (0..self.shape.len()).rev() {
            multi[axis] = idx % self.shape[axis];
            idx /= self.shape[axis];
        }
        multi
    }

    pub fn point(&self, multi: &[usize]) -> &ChartPoint<T> {
        &self.points[self.index_of(multi)]
    }
}

fn linspace<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    assert!(count >= 2);
    let step = (hi - lo) / T::of((count - 1) as f64);
    (0..count).map(|i| lo + step * T::of(i as f64)).collect()
}

/// Samples a validated family over a tensor grid.
pub fn sample_grid<T: Real>(
    spec: &CanalSpec<T>,
    resolution: &[usize],
) -> Result<Grid<T>, ConstructError> {
    let n = spec.hypersurface_dim();
    if resolution.len() != n {
        return Err(ConstructError::Validation(format!(
            "resolution needs {n} axis counts, got {}",
            resolution.len()
        )));
    }
    if resolution.iter().any(|&r| r < 2) {
        return Err(ConstructError::Validation(
            "resolution must be at least 2 per axis".into(),
        ));
    }
    let summary = spec.validate(33)?;

    let gen_ranges = default_generator_ranges(spec.kind, n);
    let mut axis_values: Vec<Vec<T>> = Vec::with_capacity(n);
    axis_values.push(linspace(spec.s_domain.0, spec.s_domain.1, resolution[0]));
    for (axis, (lo, hi)) in gen_ranges.iter().enumerate() {
        axis_values.push(linspace(T::of(*lo), T::of(*hi), resolution[axis + 1]));
    }
    let spacing: Vec<T> = axis_values
        .iter()
        .map(|v| v[1] - v[0])
        .collect();

    let total: usize = resolution.iter().product();
    let mut points = Vec::with_capacity(total);
    let gen_total: usize = resolution[1..].iter().product();

    for (si, &s) in axis_values[0].iter().enumerate() {
        let sd = slice_data(spec, s, false)
            .map_err(|e| ConstructError::Degenerate(format!("at s-index {si}: {e}")))?;
        for flat in 0..gen_total {
            // Decode generator multi-index, last axis fastest.
            let mut rem = flat;
            let mut gvals = vec![T::zero(); n - 1];
            for axis in (0..n - 1).rev() {
                let count = resolution[axis + 1];
                gvals[axis] = axis_values[axis + 1][rem % count];
                rem /= count;
            }
            let gen = GeneratorCoords::from_axis_values(spec.kind, &gvals);
            let point = eval_from_slice(spec, &sd, &gen).map_err(|e| {
                ConstructError::Degenerate(format!(
                    "at grid index {:?}: {e}",
                    grid_multi(si, flat, &resolution[1..])
                ))
            })?;
            points.push(point);
        }
    }

    Ok(Grid {
        kind: spec.kind,
        shape: resolution.to_vec(),
        spacing,
        axis_values,
        points,
        rotational: summary.rotational,
    })
}

fn grid_multi(si: usize, mut flat: usize, gen_shape: &[usize]) -> Vec<usize> {
    let mut multi = vec![0; gen_shape.len() + 1];
    multi[0] = si;
    for axis in (0..gen_shape.len()).rev() {
        multi[axis + 1] = flat % gen_shape[axis];
        flat /= gen_shape[axis];
    }
    multi
}
