//! Cross-module geometry checks at single points: curvature examples
//! with independent oracles, generator geometry, extrinsic conventions.

mod common;

use approx::assert_relative_eq;
use qcanal::curvature::{
    christoffel, curvature_data, generator_curvature, induced_metric_from_jets,
    riemann_intrinsic, sectional_curvature,
};
use qcanal::numkit::{inner, AmbientVector, Jet, Signature};
use qcanal::qclab::{detect_qc, recover_embedding, QcOutcome};
use qcanal::shapes::{
    eval_chart, eval_parabolic_hypersphere, parabolic_hypersphere_chart, GeneratorCoords,
};
use qcanal::Tolerances;

/// Independent finite-difference oracle for Christoffel symbols from a
/// closed-form metric function (no jets anywhere).
fn christoffel_fd(
    g: &dyn Fn(&[f64]) -> Vec<Vec<f64>>,
    point: &[f64],
    k: usize,
    i: usize,
    j: usize,
) -> f64 {
    let n = point.len();
    let h = 1e-5;
    let dg = |l: usize, a: usize, b: usize| {
        let mut p = point.to_vec();
        p[l] += h;
        let gp = g(&p)[a][b];
        p[l] -= 2.0 * h;
        let gm = g(&p)[a][b];
        (gp - gm) / (2.0 * h)
    };
    let g0 = g(point);
    // Invert the 2x2 metric directly.
    let det = g0[0][0] * g0[1][1] - g0[0][1] * g0[1][0];
    let ginv = [
        [g0[1][1] / det, -g0[0][1] / det],
        [-g0[1][0] / det, g0[0][0] / det],
    ];
    let mut acc = 0.0;
    for l in 0..n {
        acc += ginv[k][l] * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
    }
    0.5 * acc
}

#[test]
fn sphere_christoffels_match_fd_oracle() {
    let g = |p: &[f64]| {
        let theta = p[0];
        vec![vec![1.0, 0.0], vec![0.0, theta.sin().powi(2)]]
    };
    let point = [1.05, 0.4];
    // Jet route through the embedded chart.
    let th = Jet::variable(2, 0, point[0]);
    let ph = Jet::variable(2, 1, point[1]);
    let jets = vec![&th.sin() * &ph.cos(), &th.sin() * &ph.sin(), th.cos()];
    let m = induced_metric_from_jets(&jets, &Signature::euclidean(3)).unwrap();
    let ch = christoffel(&m);
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                let oracle = christoffel_fd(&g, &point, k, i, j);
                assert_relative_eq!(ch.gamma[k][i][j], oracle, epsilon = 1e-8);
            }
        }
    }
    // Closed forms as a second anchor.
    assert_relative_eq!(
        ch.gamma[0][1][1],
        -point[0].sin() * point[0].cos(),
        epsilon = 1e-13
    );
    assert_relative_eq!(
        ch.gamma[1][0][1],
        point[0].cos() / point[0].sin(),
        epsilon = 1e-13
    );
}

#[test]
fn canal_point_curvature_bundle() {
    // Elliptic fixture at s = 1 with R = s²: a = -1/R² = -1 on
    // horizontal planes, shape eigenvalue 1/R = 1 with multiplicity 3.
    let spec = common::elliptic_rotational();
    let gen = GeneratorCoords::Sphere {
        angles: vec![1.5, 1.55, 1.6],
    };
    let p = eval_chart(&spec, 1.0, &gen).unwrap();
    let cd = curvature_data(&p).unwrap();

    // Horizontal plane = two generator coordinate directions.
    let mut u = vec![0.0; 4];
    let mut v = vec![0.0; 4];
    u[1] = 1.0;
    v[2] = 1.0;
    let horiz = sectional_curvature(&cd.riemann, &cd.metric.g, &u, &v).unwrap();
    assert_relative_eq!(horiz, -1.0, epsilon = 1e-12);

    // The algebraic symmetries of the curvature tensor.
    let r = &cd.riemann;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    assert_relative_eq!(r[i][j][k][l], -r[j][i][k][l], epsilon = 1e-10);
                    assert_relative_eq!(r[i][j][k][l], -r[i][j][l][k], epsilon = 1e-10);
                    assert_relative_eq!(r[i][j][k][l], r[k][l][i][j], epsilon = 1e-10);
                    let bianchi = r[i][j][k][l] + r[j][k][i][l] + r[k][i][j][l];
                    assert!(bianchi.abs() < 1e-10);
                }
            }
        }
    }

    // Gauss factorization and conformal flatness.
    assert!(cd.gauss_residual < 1e-10);
    assert!(cd.weyl_rel.unwrap() < 1e-12);

    // Shape spectrum {1/R ×3, ν}.
    let vals: Vec<f64> = cd.shape_spectrum.iter().map(|e| e.value).collect();
    let near_one = vals.iter().filter(|v| (**v - 1.0).abs() < 1e-9).count();
    assert_eq!(near_one, 3, "spectrum {vals:?}");

    // Umbilical sphere sanity: constant radius gives A = (1/r)·Id.
    let tube = common::family(
        qcanal::shapes::CanalKind::Hyperbolic,
        Signature::minkowski(5),
        ["0", "s", "0", "0", "0"],
        "2",
        (0.95, 1.05),
    );
    let pt = eval_chart(
        &tube,
        1.0,
        &GeneratorCoords::Hyperboloid {
            chi: 1.0,
            angles: vec![1.5, 1.6],
        },
    )
    .unwrap();
    let cdt = curvature_data(&pt).unwrap();
    for e in &cdt.shape_spectrum {
        assert_relative_eq!(e.value, 0.5, epsilon = 1e-10);
    }
}

#[test]
fn sectional_curvature_of_planes_containing_xi() {
    // For a plane at angle φ to ξ the sectional curvature is
    // a + b·cos²φ; a plane containing ξ reaches a + b.
    let spec = common::elliptic_rotational();
    let gen = GeneratorCoords::Sphere {
        angles: vec![1.5, 1.55, 1.6],
    };
    let p = eval_chart(&spec, 1.0, &gen).unwrap();
    let cd = curvature_data(&p).unwrap();
    let dec = match detect_qc(&cd, &Tolerances::default()).unwrap() {
        QcOutcome::Qc(d) => d,
        other => panic!("expected detection, got {other:?}"),
    };
    let xi = &dec.xi;
    let x = &dec.horizontal[0];
    let k_mixed = sectional_curvature(&cd.riemann, &cd.metric.g, xi, x).unwrap();
    assert_relative_eq!(k_mixed, dec.a + dec.b, epsilon = 1e-10);

    // Random-angle planes against the recovered coefficients.
    for (i, t) in [0.3_f64, 0.9, 1.4].iter().enumerate() {
        let y = &dec.horizontal[(i + 1) % 3];
        let mix: Vec<f64> = xi
            .iter()
            .zip(y)
            .map(|(&a, &b)| t.cos() * a + t.sin() * b)
            .collect();
        let k_plane = sectional_curvature(&cd.riemann, &cd.metric.g, &mix, x).unwrap();
        assert_relative_eq!(k_plane, dec.a + dec.b * t.cos().powi(2), epsilon = 1e-9);
    }
}

#[test]
fn generator_curvature_matches_closed_forms() {
    // Hand values at s = 1, R = s²: 1/(R²(R'²-1)) = 1/3 (elliptic),
    // -1/(R²(R'²+1)) = -1/5 (hyperbolic), 0 (parabolic).
    let g_ell = generator_curvature(
        &common::elliptic_rotational(),
        1.0,
        &GeneratorCoords::Sphere {
            angles: vec![1.5, 1.55, 1.6],
        },
    )
    .unwrap();
    assert_relative_eq!(g_ell, 1.0 / 3.0, epsilon = 1e-10);

    let g_hyp = generator_curvature(
        &common::hyperbolic_rotational(),
        1.0,
        &GeneratorCoords::Hyperboloid {
            chi: 1.0,
            angles: vec![1.5, 1.6],
        },
    )
    .unwrap();
    assert_relative_eq!(g_hyp, -1.0 / 5.0, epsilon = 1e-10);

    let g_par = generator_curvature(
        &common::parabolic_rotational(),
        1.0,
        &GeneratorCoords::Flat {
            w: vec![0.05, -0.02, 0.04],
        },
    )
    .unwrap();
    assert!(g_par.abs() < 1e-8, "parabolic generator curvature {g_par}");
}

#[test]
fn parabolic_hypersphere_is_flat() {
    // The quadric carries the Euclidean metric of its base hyperplane.
    let (jets, sig) = parabolic_hypersphere_chart(1.3, &[0.4, -0.2, 0.7]).unwrap();
    let m = induced_metric_from_jets(&jets, &sig).unwrap();
    let ch = christoffel(&m);
    let r = riemann_intrinsic(&m, &ch);
    let norm = qcanal::numkit::linalg::frobenius4(&r);
    assert!(norm < 1e-12, "curvature norm {norm}");
    for i in 0..3 {
        for j in 0..3 {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert_relative_eq!(m.g[i][j], expect, epsilon = 1e-14);
        }
    }
    // Coordinates in the hyperplane system agree with the graph form.
    let p = eval_parabolic_hypersphere(1.3, &[0.4, -0.2, 0.7]).unwrap();
    assert_relative_eq!(p[3], (0.16 + 0.04 + 0.49) / 2.6, epsilon = 1e-15);
}

#[test]
fn embedding_recovery_at_hand_point() {
    // At the hand-solved elliptic point, the recovered center must be
    // the true z(1) = (1, 0, 0, 0, 0) with radius R(1) = 1.
    let spec = common::elliptic_rotational();
    let gen = GeneratorCoords::Sphere {
        angles: vec![1.5, 1.55, 1.6],
    };
    let p = eval_chart(&spec, 1.0, &gen).unwrap();
    let cd = curvature_data(&p).unwrap();
    let dec = match detect_qc(&cd, &Tolerances::default()).unwrap() {
        QcOutcome::Qc(d) => d,
        other => panic!("expected detection, got {other:?}"),
    };
    let emb = recover_embedding(&p, &dec, &cd).unwrap();
    assert_relative_eq!(emb.recovered_radius, 1.0, epsilon = 1e-12);
    assert_relative_eq!(emb.recovered_center.coords[0], 1.0, epsilon = 1e-12);
    for c in &emb.recovered_center.coords[1..] {
        assert!(c.abs() < 1e-12);
    }
    // Minkowski branch coefficients of the synthetic tensor.
    assert_relative_eq!(emb.alpha, 1.0, epsilon = 1e-12);
    assert_relative_eq!(emb.beta_coeff, -0.6, epsilon = 1e-12);
}

#[test]
fn boundary_case_vanishing_simple_root() {
    // R = 2s gives a + b = 0, so the simple Ricci root vanishes;
    // detection must still succeed on the multiplicity pattern and
    // attach the boundary note.
    let spec = common::family(
        qcanal::shapes::CanalKind::Elliptic,
        Signature::minkowski(5),
        ["s", "0", "0", "0", "0"],
        "2*s",
        (0.95, 1.05),
    );
    let gen = GeneratorCoords::Sphere {
        angles: vec![1.5, 1.55, 1.6],
    };
    let p = eval_chart(&spec, 1.0, &gen).unwrap();
    let cd = curvature_data(&p).unwrap();
    match detect_qc(&cd, &Tolerances::default()).unwrap() {
        QcOutcome::Qc(dec) => {
            assert!(dec.simple_root_near_zero);
            assert_relative_eq!(dec.a, -0.25, epsilon = 1e-12);
            assert_relative_eq!(dec.b, 0.25, epsilon = 1e-12);
            assert!(dec.lambda_xi.abs() < 1e-12);
        }
        other => panic!("expected detection, got {other:?}"),
    }
}

#[test]
fn weyl_flags_below_dimension_four() {
    // A three-dimensional hypersurface chart: Weyl is not computed.
    let dom = (0.95, 1.05);
    let spec = qcanal::shapes::CanalSpec {
        ambient: Signature::minkowski(4),
        kind: qcanal::shapes::CanalKind::Elliptic,
        center: ["s", "0", "0", "0"]
            .iter()
            .map(|s| qcanal::exprlang::ProfileSpec::new(s, dom).unwrap())
            .collect(),
        radius: qcanal::exprlang::ProfileSpec::new("s^2", dom).unwrap(),
        s_domain: dom,
    };
    let gen = GeneratorCoords::Sphere {
        angles: vec![1.5, 1.55],
    };
    let p = eval_chart(&spec, 1.0, &gen).unwrap();
    let cd = curvature_data(&p).unwrap();
    assert!(cd.weyl.is_none());
    assert!(cd.weyl_rel.is_none());
}

#[test]
fn normal_tangency_via_jets_all_kinds() {
    for (spec, gen) in [
        (
            common::elliptic_rotational(),
            GeneratorCoords::Sphere {
                angles: vec![1.5, 1.55, 1.6],
            },
        ),
        (
            common::hyperbolic_circle_center(),
            GeneratorCoords::Hyperboloid {
                chi: 1.0,
                angles: vec![1.5, 1.6],
            },
        ),
        (
            common::parabolic_null_cubic(),
            GeneratorCoords::Flat {
                w: vec![0.05, -0.03, 0.06],
            },
        ),
        (
            common::euclidean_rotational(),
            GeneratorCoords::Sphere {
                angles: vec![1.5, 1.55, 1.6],
            },
        ),
    ] {
        let p = eval_chart(&spec, 1.0, &gen).unwrap();
        let cd = curvature_data(&p).unwrap();
        let eps = p.sig.normal_square() as f64;
        assert_relative_eq!(
            inner(&cd.normal, &cd.normal, &p.sig),
            eps,
            epsilon = 1e-12
        );
        for m in 0..p.chart_dim() {
            let z_m = AmbientVector::new(
                p.jets.iter().map(|j| j.deriv1(m)).collect::<Vec<f64>>(),
            );
            assert!(inner(&cd.normal, &z_m, &p.sig).abs() < 1e-9);
        }
    }
}
