//! Closed-form chart construction for the four canal kinds.
//!
//! Chart parameters are `(s, u¹, …, u^{n-1})`; every ambient coordinate
//! of a point is produced as an exact order-three jet in all of them.
//! The adapted frame along the center curve is built by Gram–Schmidt on
//! jets, so its `s`-derivatives are exact as well. Profiles are read at
//! degree four because `R'` and `z'` enter the formulas as factors of
//! their own.

use crate::numkit::{
    inner, orthonormal_complement_frame, pseudo_null_frame, AmbientVector, Jet, OrthoFrame,
    PseudoNullFrame, Signature,
};
use crate::scalar::{GeomScalar, Real};
use crate::shapes::{CanalKind, CanalSpec, ConstructError, GeneratorCoords};

/// One constructed point of a canal hypersurface chart.
#[derive(Clone, Debug)]
pub struct ChartPoint<T> {
    pub kind: CanalKind,
    pub sig: Signature,
    pub s: T,
    pub gen: GeneratorCoords<T>,
    /// Ambient position `Z`.
    pub position: AmbientVector<T>,
    /// Ambient coordinates of `Z` as jets in the chart parameters.
    pub jets: Vec<Jet<T>>,
    /// Sphere-family center `z(s)`.
    pub center: AmbientVector<T>,
    /// Radius `R(s)`.
    pub radius: T,
    /// Radius slope `R'(s)`.
    pub radius_slope: T,
    /// Center tangent `t = z'(s)`.
    pub tangent: AmbientVector<T>,
    /// Tangent as jets (for exact derived fields).
    pub(crate) tangent_jets: AmbientVector<Jet<T>>,
    pub(crate) radius_jet: Jet<T>,
    pub(crate) radius_slope_jet: Jet<T>,
}

impl<T: Real> ChartPoint<T> {
    /// Number of chart parameters the jets range over.
    pub fn chart_dim(&self) -> usize {
        self.jets[0].vars()
    }

    /// Defects of the two envelope equations at this point.
    pub fn envelope_defects(&self) -> (T, T) {
        let d = &self.position - &self.center;
        let eps = T::of(self.sig.normal_square() as f64);
        let e1 = (inner(&d, &d, &self.sig) - eps * self.radius * self.radius).abs();
        let rhs = T::of(self.kind.tangency_sign()) * self.radius * self.radius_slope;
        let e2 = (inner(&d, &self.tangent, &self.sig) - rhs).abs();
        (e1, e2)
    }

    /// The analytic unit normal `-(Z - z)/R`.
    pub fn reference_normal(&self) -> AmbientVector<T> {
        let d = &self.position - &self.center;
        d.scale(&(-self.radius.recip()))
    }

    pub(crate) fn tangent_jets(&self) -> &AmbientVector<Jet<T>> {
        &self.tangent_jets
    }

    pub(crate) fn radius_jets(&self) -> (&Jet<T>, &Jet<T>) {
        (&self.radius_jet, &self.radius_slope_jet)
    }
}

/// Per-`s` data shared by all generator points of one slice.
pub(crate) struct SliceData<T> {
    vars: usize,
    gen_axis0: usize,
    s: T,
    z: AmbientVector<Jet<T>>,
    t: AmbientVector<Jet<T>>,
    r: Jet<T>,
    rp: Jet<T>,
    frame: FrameData<T>,
}

enum FrameData<T> {
    Ortho(OrthoFrame<Jet<T>>),
    Null(PseudoNullFrame<Jet<T>>),
}

fn constraint<T: Real>(s: T, what: impl Into<String>) -> ConstructError {
    ConstructError::Constraint {
        s: s.to_f64().unwrap_or(f64::NAN),
        constraint: what.into(),
    }
}

pub(crate) fn slice_data<T: Real>(
    spec: &CanalSpec<T>,
    s: T,
    generator_only: bool,
) -> Result<SliceData<T>, ConstructError> {
    let n = spec.hypersurface_dim();
    let (vars, gen_axis0) = if generator_only { (n - 1, 0) } else { (n, 1) };

    let embed = |series: &crate::numkit::Taylor1<T>, shift: usize| -> Jet<T> {
        if generator_only {
            Jet::constant(vars, series.derivative(shift))
        } else {
            Jet::from_taylor1(series, vars, 0, shift)
        }
    };

    let mut z = Vec::with_capacity(spec.ambient.dim());
    let mut t = Vec::with_capacity(spec.ambient.dim());
    for p in &spec.center {
        let series = p
            .eval_taylor(s)
            .map_err(|e| constraint(s, format!("center profile `{}`: {}", p.source, e)))?;
        z.push(embed(&series, 0));
        t.push(embed(&series, 1));
    }
    let z = AmbientVector::new(z);
    let t = AmbientVector::new(t);

    let rs = spec
        .radius
        .eval_taylor(s)
        .map_err(|e| constraint(s, format!("radius profile `{}`: {}", spec.radius.source, e)))?;
    let r = embed(&rs, 0);
    let rp = embed(&rs, 1);

    let rv = rs.value();
    let rpv = rs.derivative(1);
    if rv <= T::zero() {
        return Err(constraint(s, "R > 0"));
    }
    match spec.kind {
        CanalKind::Elliptic => {
            if rpv * rpv <= T::one() {
                return Err(constraint(s, "R'^2 > 1"));
            }
        }
        CanalKind::Parabolic => {
            if rpv.is_zero() {
                return Err(constraint(s, "R' != 0 (envelope degenerates)"));
            }
        }
        CanalKind::Euclidean => {
            if rpv * rpv >= T::one() {
                return Err(constraint(s, "R'^2 < 1"));
            }
        }
        CanalKind::Hyperbolic => {}
    }

    let frame = match spec.kind {
        CanalKind::Parabolic => FrameData::Null(
            pseudo_null_frame(&t, &spec.ambient)
                .map_err(|e| constraint(s, format!("{e}")))?,
        ),
        _ => FrameData::Ortho(
            orthonormal_complement_frame(&t, &spec.ambient)
                .map_err(|e| constraint(s, format!("{e}")))?,
        ),
    };

    Ok(SliceData {
        vars,
        gen_axis0,
        s,
        z,
        t,
        r,
        rp,
        frame,
    })
}

/// Point of the unit sphere spanned by `frame`, in standard spherical
/// coordinates (`angles.len() + 1` frame vectors).
fn sphere_point<T: Real>(
    angles: &[Jet<T>],
    frame: &[AmbientVector<Jet<T>>],
) -> AmbientVector<Jet<T>> {
    let k = angles.len();
    assert_eq!(frame.len(), k + 1, "sphere frame size mismatch");
    let proto = &frame[0].coords[0];
    let mut out = AmbientVector::zero_like(proto, frame[0].dim());
    let mut sin_prod = proto.lift(T::one());
    for (m, a) in angles.iter().enumerate() {
        let coef = &sin_prod * &a.cos();
        out = &out + &frame[m].scale(&coef);
        sin_prod = &sin_prod * &a.sin();
    }
    &out + &frame[k].scale(&sin_prod)
}

pub(crate) fn eval_from_slice<T: Real>(
    spec: &CanalSpec<T>,
    sd: &SliceData<T>,
    gen: &GeneratorCoords<T>,
) -> Result<ChartPoint<T>, ConstructError> {
    let n = spec.hypersurface_dim();
    let vars = sd.vars;
    let a0 = sd.gen_axis0;
    let var_jet = |axis: usize, value: T| Jet::variable(vars, a0 + axis, value);

    let mismatch = || {
        constraint(
            sd.s,
            format!("generator coordinates do not match the {} kind", spec.kind),
        )
    };

    let zjets = match (spec.kind, gen) {
        (CanalKind::Elliptic | CanalKind::Euclidean, GeneratorCoords::Sphere { angles }) => {
            if angles.len() != n - 1 {
                return Err(constraint(sd.s, "sphere generator needs n-1 angles"));
            }
            let FrameData::Ortho(frame) = &sd.frame else {
                return Err(mismatch());
            };
            let ang: Vec<Jet<T>> = angles
                .iter()
                .enumerate()
                .map(|(i, &a)| var_jet(i, a))
                .collect();
            let u = sphere_point(&ang, &frame.vectors);
            let rr = &sd.r * &sd.rp;
            // Both signatures put the contact sphere behind the radius
            // growth: coefficient of t is -RR' in each case.
            let lam = -(&rr);
            let w2 = if spec.kind == CanalKind::Elliptic {
                &(&sd.rp * &sd.rp) - &sd.r.lift_one()
            } else {
                &sd.r.lift_one() - &(&sd.rp * &sd.rp)
            };
            let mu = &sd.r * &w2.sqrt_checked(sd.s)?;
            &(&sd.z + &sd.t.scale(&lam)) + &u.scale(&mu)
        }
        (CanalKind::Hyperbolic, GeneratorCoords::Hyperboloid { chi, angles }) => {
            if angles.len() != n - 2 {
                return Err(constraint(sd.s, "hyperboloid generator needs n-2 angles"));
            }
            let FrameData::Ortho(frame) = &sd.frame else {
                return Err(mismatch());
            };
            let time_idx = frame.timelike_index().ok_or_else(|| {
                constraint(sd.s, "tangent complement carries no timelike direction")
            })?;
            let space: Vec<AmbientVector<Jet<T>>> = frame
                .vectors
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != time_idx)
                .map(|(_, v)| v.clone())
                .collect();
            let chi_jet = var_jet(0, *chi);
            let ang: Vec<Jet<T>> = angles
                .iter()
                .enumerate()
                .map(|(i, &a)| var_jet(i + 1, a))
                .collect();
            let sphere = sphere_point(&ang, &space);
            let v = &frame.vectors[time_idx].scale(&chi_jet.cosh())
                + &sphere.scale(&chi_jet.sinh());
            let rr = &sd.r * &sd.rp;
            let w2 = &(&sd.rp * &sd.rp) + &sd.r.lift_one();
            let mu = &sd.r * &w2.sqrt_checked(sd.s)?;
            &(&sd.z + &sd.t.scale(&rr)) + &v.scale(&mu)
        }
        (CanalKind::Parabolic, GeneratorCoords::Flat { w }) => {
            if w.len() != n - 1 {
                return Err(constraint(sd.s, "flat generator needs n-1 coordinates"));
            }
            let FrameData::Null(frame) = &sd.frame else {
                return Err(mismatch());
            };
            let proto = &sd.r;
            let mut wvec = AmbientVector::zero_like(proto, spec.ambient.dim());
            let mut w2 = proto.lift(T::zero());
            for (i, (&wi, e)) in w.iter().zip(&frame.spacelike).enumerate() {
                let wj = var_jet(i, wi);
                w2 = &w2 + &(&wj * &wj);
                wvec = &wvec + &e.scale(&wj);
            }
            let rr = &sd.r * &sd.rp;
            let two_rr = rr.scale(T::of(2.0));
            let lam = -(&(&(&sd.r * &sd.r) + &w2) / &two_rr);
            &(&(&sd.z + &sd.t.scale(&lam)) - &frame.partner.scale(&rr)) + &wvec
        }
        _ => return Err(mismatch()),
    };

    Ok(ChartPoint {
        kind: spec.kind,
        sig: spec.ambient.clone(),
        s: sd.s,
        gen: gen.clone(),
        position: zjets.values(),
        center: sd.z.values(),
        radius: sd.r.value(),
        radius_slope: sd.rp.value(),
        tangent: sd.t.values(),
        tangent_jets: sd.t.clone(),
        radius_jet: sd.r.clone(),
        radius_slope_jet: sd.rp.clone(),
        jets: zjets.coords,
    })
}

trait JetExt<T: Real> {
    fn lift_one(&self) -> Jet<T>;
    fn sqrt_checked(&self, s: T) -> Result<Jet<T>, ConstructError>;
}

impl<T: Real> JetExt<T> for Jet<T> {
    fn lift_one(&self) -> Jet<T> {
        Jet::constant(self.vars(), T::one())
    }

    fn sqrt_checked(&self, s: T) -> Result<Jet<T>, ConstructError> {
        self.sqrt()
            .map_err(|e| constraint(s, format!("{e} while solving the envelope")))
    }
}

/// Evaluates one chart point with full `(s, generator)` jets.
pub fn eval_chart<T: Real>(
    spec: &CanalSpec<T>,
    s: T,
    gen: &GeneratorCoords<T>,
) -> Result<ChartPoint<T>, ConstructError> {
    let sd = slice_data(spec, s, false)?;
    eval_from_slice(spec, &sd, gen)
}

/// Evaluates a point of the generator submanifold at fixed `s`: jets
/// range over the generator coordinates only.
pub fn eval_chart_generator_only<T: Real>(
    spec: &CanalSpec<T>,
    s: T,
    gen: &GeneratorCoords<T>,
) -> Result<ChartPoint<T>, ConstructError> {
    let sd = slice_data(spec, s, true)?;
    eval_from_slice(spec, &sd, gen)
}

fn expect_kind<T: Real>(spec: &CanalSpec<T>, kind: CanalKind) -> Result<(), ConstructError> {
    if spec.kind != kind {
        return Err(ConstructError::Validation(format!(
            "expected a {} family, got {}",
            kind, spec.kind
        )));
    }
    Ok(())
}

pub fn eval_elliptic<T: Real>(
    spec: &CanalSpec<T>,
    s: T,
    gen: &GeneratorCoords<T>,
) -> Result<ChartPoint<T>, ConstructError> {
    expect_kind(spec, CanalKind::Elliptic)?;
    eval_chart(spec, s, gen)
}

pub fn eval_hyperbolic<T: Real>(
    spec: &CanalSpec<T>,
    s: T,
    gen: &GeneratorCoords<T>,
) -> Result<ChartPoint<T>, ConstructError> {
    expect_kind(spec, CanalKind::Hyperbolic)?;
    eval_chart(spec, s, gen)
}

pub fn eval_parabolic<T: Real>(
    spec: &CanalSpec<T>,
    s: T,
    gen: &GeneratorCoords<T>,
) -> Result<ChartPoint<T>, ConstructError> {
    expect_kind(spec, CanalKind::Parabolic)?;
    eval_chart(spec, s, gen)
}

pub fn eval_euclidean<T: Real>(
    spec: &CanalSpec<T>,
    s: T,
    gen: &GeneratorCoords<T>,
) -> Result<ChartPoint<T>, ConstructError> {
    expect_kind(spec, CanalKind::Euclidean)?;
    eval_chart(spec, s, gen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprlang::ProfileSpec;
    use crate::shapes::CanalKind;
    use approx::assert_relative_eq;

    fn spec(
        kind: CanalKind,
        ambient: Signature,
        center: [&str; 5],
        radius: &str,
        dom: (f64, f64),
    ) -> CanalSpec<f64> {
        CanalSpec {
            ambient,
            kind,
            center: center
                .iter()
                .map(|s| ProfileSpec::new(s, dom).unwrap())
                .collect(),
            radius: ProfileSpec::new(radius, dom).unwrap(),
            s_domain: dom,
        }
    }

    fn assert_coords(p: &ChartPoint<f64>, expect: &[f64]) {
        for (a, (&got, &want)) in p.position.coords.iter().zip(expect).enumerate() {
            assert_relative_eq!(got, want, epsilon = 1e-12, max_relative = 1e-12);
            let _ = a;
        }
    }

    fn assert_envelope(p: &ChartPoint<f64>) {
        let (e1, e2) = p.envelope_defects();
        assert!(e1 < 1e-12 && e2 < 1e-12, "envelope defects {e1} {e2}");
    }

    #[test]
    fn elliptic_points_solve_the_envelope() {
        // Hand solution at s = 1 for R = s²: coefficient of t is
        // -RR' = -2 and the sphere factor is R·√(R'²-1) = √3.
        let sp = spec(
            CanalKind::Elliptic,
            Signature::minkowski(5),
            ["s", "0", "0", "0", "0"],
            "s^2",
            (0.9, 1.1),
        );
        let p = eval_elliptic(
            &sp,
            1.0,
            &GeneratorCoords::Sphere {
                angles: vec![0.0, 0.0, 0.0],
            },
        )
        .unwrap();
        assert_coords(&p, &[-1.0, 3.0_f64.sqrt(), 0.0, 0.0, 0.0]);
        assert_envelope(&p);
        let d = &p.position - &p.center;
        assert_relative_eq!(inner(&d, &d, &p.sig), -1.0, epsilon = 1e-14);

        // R = 2s at s = 1 with the generator pointing along the second
        // frame axis: -RR' = -4, R√(R'²-1) = 2√3.
        let sp2 = spec(
            CanalKind::Elliptic,
            Signature::minkowski(5),
            ["s", "0", "0", "0", "0"],
            "2*s",
            (0.9, 1.1),
        );
        let p2 = eval_elliptic(
            &sp2,
            1.0,
            &GeneratorCoords::Sphere {
                angles: vec![std::f64::consts::FRAC_PI_2, 0.0, 0.0],
            },
        )
        .unwrap();
        assert_coords(&p2, &[-3.0, 0.0, 2.0 * 3.0_f64.sqrt(), 0.0, 0.0]);
        assert_envelope(&p2);
    }

    #[test]
    fn hyperbolic_points_solve_the_envelope() {
        // Hand solution at s = 1 for R = s²: coefficient of t is
        // +RR' = 2 and the hyperboloid factor is R√(R'²+1) = √5.
        let sp = spec(
            CanalKind::Hyperbolic,
            Signature::minkowski(5),
            ["0", "s", "0", "0", "0"],
            "s^2",
            (0.9, 1.1),
        );
        let p = eval_hyperbolic(
            &sp,
            1.0,
            &GeneratorCoords::Hyperboloid {
                chi: 0.0,
                angles: vec![0.3, 0.7],
            },
        )
        .unwrap();
        // χ = 0 collapses the spherical factor: the generator point is
        // exactly the timelike frame axis.
        assert_coords(&p, &[5.0_f64.sqrt(), 3.0, 0.0, 0.0, 0.0]);
        assert_envelope(&p);
        let d = &p.position - &p.center;
        assert_relative_eq!(inner(&d, &p.tangent, &p.sig), 2.0, epsilon = 1e-13);
    }

    #[test]
    fn parabolic_points_solve_the_envelope() {
        // Hand solution at s = 1, R = s², center s·(1,1,0,0,0):
        // m = (1/2, -1/2, 0, 0, 0), -RR'·m = (-1, 1, 0, 0, 0);
        // w = e2 gives λ = -(1+1)/4 = -1/2 and Z = (-1/2, 3/2, 1, 0, 0);
        // w = 0 gives λ = -1/4 and Z = (-1/4, 7/4, 0, 0, 0).
        let sp = spec(
            CanalKind::Parabolic,
            Signature::minkowski(5),
            ["s", "s", "0", "0", "0"],
            "s^2",
            (0.9, 1.1),
        );
        let p = eval_parabolic(
            &sp,
            1.0,
            &GeneratorCoords::Flat {
                w: vec![1.0, 0.0, 0.0],
            },
        )
        .unwrap();
        assert_coords(&p, &[-0.5, 1.5, 1.0, 0.0, 0.0]);
        assert_envelope(&p);

        let p0 = eval_parabolic(
            &sp,
            1.0,
            &GeneratorCoords::Flat {
                w: vec![0.0, 0.0, 0.0],
            },
        )
        .unwrap();
        assert_coords(&p0, &[-0.25, 1.75, 0.0, 0.0, 0.0]);
        assert_envelope(&p0);
        for q in [&p, &p0] {
            let d = &q.position - &q.center;
            assert_relative_eq!(inner(&d, &d, &q.sig), -1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn euclidean_points_solve_the_envelope() {
        // Hand solution at s = 1 for R = 1 + s²/4 (R = 1.25, R' = 0.5):
        // the tangency equation (Z-z)·t = -RR' puts the contact circle
        // behind the growth direction, so Z = (1 - 0.625, R√(1-R'²), …).
        let sp = spec(
            CanalKind::Euclidean,
            Signature::euclidean(5),
            ["s", "0", "0", "0", "0"],
            "1 + s^2/4",
            (0.5, 1.5),
        );
        let p = eval_euclidean(
            &sp,
            1.0,
            &GeneratorCoords::Sphere {
                angles: vec![0.0, 0.0, 0.0],
            },
        )
        .unwrap();
        assert_coords(&p, &[0.375, 1.0825317547305483, 0.0, 0.0, 0.0]);
        assert_envelope(&p);
        let d = &p.position - &p.center;
        assert_relative_eq!(inner(&d, &d, &p.sig), 1.5625, epsilon = 1e-14);

        // Constant radius degenerates to a tube: Z = z + c·u.
        let tube = spec(
            CanalKind::Euclidean,
            Signature::euclidean(5),
            ["s", "0", "0", "0", "0"],
            "2",
            (0.5, 1.5),
        );
        let pt = eval_euclidean(
            &tube,
            1.0,
            &GeneratorCoords::Sphere {
                angles: vec![0.0, 0.0, 0.0],
            },
        )
        .unwrap();
        assert_coords(&pt, &[1.0, 2.0, 0.0, 0.0, 0.0]);
        assert_envelope(&pt);
    }

    #[test]
    fn normal_is_orthogonal_to_jet_tangents() {
        // Jet-derived tangents at a regular point of each kind must be
        // orthogonal to the analytic normal -(Z - z)/R.
        let cases: Vec<(CanalSpec<f64>, GeneratorCoords<f64>)> = vec![
            (
                spec(
                    CanalKind::Elliptic,
                    Signature::minkowski(5),
                    ["s", "0", "0", "0", "0"],
                    "s^2",
                    (0.9, 1.1),
                ),
                GeneratorCoords::Sphere {
                    angles: vec![1.4, 1.5, 1.6],
                },
            ),
            (
                spec(
                    CanalKind::Hyperbolic,
                    Signature::minkowski(5),
                    ["0", "s", "0", "0", "0"],
                    "s^2",
                    (0.9, 1.1),
                ),
                GeneratorCoords::Hyperboloid {
                    chi: 0.9,
                    angles: vec![1.5, 1.7],
                },
            ),
            (
                spec(
                    CanalKind::Parabolic,
                    Signature::minkowski(5),
                    ["s", "s", "0", "0", "0"],
                    "s^2",
                    (0.9, 1.1),
                ),
                GeneratorCoords::Flat {
                    w: vec![0.1, -0.05, 0.12],
                },
            ),
            (
                spec(
                    CanalKind::Euclidean,
                    Signature::euclidean(5),
                    ["s", "0", "0", "0", "0"],
                    "1 + s^2/4",
                    (0.5, 1.5),
                ),
                GeneratorCoords::Sphere {
                    angles: vec![1.4, 1.5, 1.6],
                },
            ),
        ];
        for (sp, gen) in cases {
            let p = eval_chart(&sp, 1.0, &gen).unwrap();
            let nref = p.reference_normal();
            let eps = p.sig.normal_square() as f64;
            assert_relative_eq!(inner(&nref, &nref, &p.sig), eps, epsilon = 1e-12);
            for m in 0..p.chart_dim() {
                let z_m = AmbientVector::new(
                    p.jets.iter().map(|j| j.deriv1(m)).collect::<Vec<f64>>(),
                );
                assert!(
                    inner(&nref, &z_m, &p.sig).abs() < 1e-9,
                    "normal not orthogonal to tangent {m} for {:?}",
                    p.kind
                );
            }
        }
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let sp = spec(
            CanalKind::Elliptic,
            Signature::minkowski(5),
            ["s", "0", "0", "0", "0"],
            "s^2",
            (0.9, 1.1),
        );
        assert!(eval_hyperbolic(&sp, 1.0, &GeneratorCoords::Hyperboloid {
            chi: 0.0,
            angles: vec![0.0, 0.0],
        })
        .is_err());
        assert!(eval_chart(&sp, 1.0, &GeneratorCoords::Flat {
            w: vec![0.0, 0.0, 0.0],
        })
        .is_err());
    }

    #[test]
    fn constraint_violations_name_the_inequality() {
        // R = 1 + s²/4 has R'² < 1 near s = 1; invalid for the elliptic kind.
        let sp = spec(
            CanalKind::Elliptic,
            Signature::minkowski(5),
            ["s", "0", "0", "0", "0"],
            "1 + s^2/4",
            (0.9, 1.1),
        );
        let err = eval_elliptic(&sp, 1.0, &GeneratorCoords::Sphere {
            angles: vec![0.0, 0.0, 0.0],
        })
        .unwrap_err();
        assert!(err.to_string().contains("R'^2 > 1"), "got {err}");
    }
}
