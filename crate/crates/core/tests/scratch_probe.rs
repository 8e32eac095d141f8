mod common;

use qcanal::qclab::analyze_grid;
use qcanal::shapes::CanalSpec;
use qcanal::Tolerances;

fn probe(name: &str, spec: &CanalSpec<f64>) {
    let tols = Tolerances::default();
    let ga = analyze_grid(spec, &[5, 5, 5, 5], &tols).unwrap();
    let idx = ga.grid.index_of(&[2, 2, 2, 2]);
    let p = &ga.points[idx];
    let d = p.qc.as_ref().expect("detection");
    println!("=== {name} (rotational={})", ga.grid.rotational);
    println!("  a={:.12} b={:.12} k={:.12} a+k2={:.3e}", d.a, d.b, p.k_beta, d.a + p.k_beta*p.k_beta);
    println!("  fit={:?} weyl={:?} gauss={:.2e}", ga.max_fit_residual(), ga.max_weyl(), ga.max_gauss());
    println!("  env={:?} normal={:.2e} cos={:?}", ga.max_envelope(), ga.max_normal_defect(), ga.max_xi_cosine_defect());
    let st = ga.structure.as_ref().unwrap();
    println!("  r_da={:.2e} r_deta_hor={:.2e} r_theta={:.2e} r_umb={:.2e} r_dk={:.2e}", st.r_da, st.r_deta_hor, st.r_theta, st.r_umb, st.r_dk);
    println!("  subproj: db={:.2e} geo={:.2e} deta={:.2e}", st.r_subproj_db, st.r_geodesic, st.r_deta_full);
    println!("  codazzi={:?} gradtau={:?} kdisc={:.2e}", ga.codazzi, ga.grad_tau_defect, ga.k_estimates.as_ref().unwrap().max_discrepancy);
    let shape: Vec<f64> = p.curvature.shape_spectrum.iter().map(|e| e.value).collect();
    println!("  shape={shape:?}");
    if let Some(e) = &p.embedding {
        println!("  radius={:.12} (R={:.12})", e.recovered_radius, ga.grid.points[idx].radius);
    }
}

#[test]
fn probe_all_fixtures() {
    probe("elliptic rot", &common::elliptic_rotational());
    probe("hyperbolic rot", &common::hyperbolic_rotational());
    probe("parabolic rot", &common::parabolic_rotational());
    probe("euclidean rot", &common::euclidean_rotational());
    probe("elliptic hyperbola-center", &common::elliptic_hyperbola_center());
    probe("hyperbolic circle-center", &common::hyperbolic_circle_center());
    probe("parabolic null-cubic", &common::parabolic_null_cubic());
}
