//! Named numeric tolerances with overridable defaults.

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("unknown tolerance name `{0}`")]
pub struct UnknownTolerance(pub String);

macro_rules! tolerances {
    ($($name:ident = $default:expr, $doc:expr;)*) => {
        /// Tolerance bundle used across detection and verification.
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct Tolerances {
            $(#[doc = $doc] pub $name: f64,)*
        }

        impl Default for Tolerances {
            fn default() -> Self {
                Self { $($name: $default,)* }
            }
        }

        impl Tolerances {
            /// Sets a tolerance by its configuration name.
            pub fn set(&mut self, name: &str, value: f64) -> Result<(), UnknownTolerance> {
                match name {
                    $(stringify!($name) => { self.$name = value; Ok(()) })*
                    _ => Err(UnknownTolerance(name.to_owned())),
                }
            }

            pub const NAMES: &'static [&'static str] = &[$(stringify!($name),)*];
        }
    };
}

tolerances! {
    envelope = 1e-10, "Defect bound for both envelope equations.";
    normal_orth = 1e-9, "Normal orthogonality and unit-square defect.";
    qc_fit = 1e-8, "Relative curvature-fit residual for detection.";
    cluster_rel = 1e-6, "Relative eigenvalue clustering width (multiplicity detection).";
    b_floor = 1e-10, "Below this |b| the tensor counts as constant-curvature.";
    weyl = 1e-8, "Relative Weyl norm bound at conformally flat points.";
    gauss = 1e-8, "Relative Gauss-equation residual bound.";
    shape_cluster = 1e-7, "Shape-spectrum clustering bound for the 1/R pattern.";
    closed_form = 1e-7, "Match bound for closed-form scalar cross-checks.";
    scalar_exact = 1e-8, "Match bound for jet-exact scalar cross-checks (a, k).";
    xi_cosine = 1e-8, "Allowed cosine defect 1 - |cos| for recovered directions.";
    sign_zero = 1e-7, "Width of the zero band when classifying a + k².";
    structure = 1e-5, "Bound for finite-difference structure-equation residuals.";
    subproj_floor = 1e-3, "Non-rotational families must exceed this in the db residual.";
    codazzi = 1e-5, "Bound for the Codazzi residual of the synthetic tensor.";
    codazzi_floor = 1e-2, "Corrupted fields must exceed this Codazzi residual.";
    embed = 1e-8, "Embedding recovery agreement (centers, radius).";
    generator = 1e-6, "Generator curvature vs a + k² agreement.";
    generator_zero = 1e-7, "Zero band for the parabolic generator curvature.";
    degenerate_floor = 1e-8, "Points with |ξ·Z_s| below this are flagged degenerate.";
    classify = 1e-6, "Shape-spectrum clustering and zero bands for point labels.";
    isometry = 1e-6, "Allowed (a, b) defect in structure-preserving matching.";
    grad_tau_cosine = 1e-4, "Cosine defect bound for scalar-curvature gradient alignment.";
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_by_name() {
        let mut t = Tolerances::default();
        t.set("qc_fit", 1e-6).unwrap();
        assert_eq!(t.qc_fit, 1e-6);
        assert!(t.set("bogus", 1.0).is_err());
    }
}
