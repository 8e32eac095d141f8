//! Shared fixtures and independent finite-difference oracles.

use qcanal::exprlang::ProfileSpec;
use qcanal::numkit::Signature;
use qcanal::shapes::{CanalKind, CanalSpec};

pub fn family(
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

/// Rotational fixtures used across the verification tests.
pub fn elliptic_rotational() -> CanalSpec<f64> {
    family(
        CanalKind::Elliptic,
        Signature::minkowski(5),
        ["s", "0", "0", "0", "0"],
        "s^2",
        (0.95, 1.05),
    )
}

pub fn hyperbolic_rotational() -> CanalSpec<f64> {
    family(
        CanalKind::Hyperbolic,
        Signature::minkowski(5),
        ["0", "s", "0", "0", "0"],
        "s^2",
        (0.95, 1.05),
    )
}

pub fn parabolic_rotational() -> CanalSpec<f64> {
    family(
        CanalKind::Parabolic,
        Signature::minkowski(5),
        ["s", "s", "0", "0", "0"],
        "s^2",
        (0.95, 1.05),
    )
}

pub fn euclidean_rotational() -> CanalSpec<f64> {
    family(
        CanalKind::Euclidean,
        Signature::euclidean(5),
        ["s", "0", "0", "0", "0"],
        "2 + s/2",
        (0.95, 1.05),
    )
}

/// Curved-center fixtures (not rotational).
pub fn elliptic_hyperbola_center() -> CanalSpec<f64> {
    family(
        CanalKind::Elliptic,
        Signature::minkowski(5),
        ["sinh(s)", "cosh(s)", "0", "0", "0"],
        "s^2",
        (0.95, 1.05),
    )
}

pub fn hyperbolic_circle_center() -> CanalSpec<f64> {
    family(
        CanalKind::Hyperbolic,
        Signature::minkowski(5),
        ["0", "cos(s)", "sin(s)", "0", "0"],
        "s^2",
        (0.95, 1.05),
    )
}

pub fn parabolic_null_cubic() -> CanalSpec<f64> {
    family(
        CanalKind::Parabolic,
        Signature::minkowski(5),
        [
            "(s + s^3/3)/sqrt(2)",
            "s^2/sqrt(2)",
            "(s - s^3/3)/sqrt(2)",
            "0",
            "0",
        ],
        "s^2",
        (0.95, 1.05),
    )
}
