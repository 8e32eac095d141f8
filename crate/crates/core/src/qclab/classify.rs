//! Class labels: the four quasi-constant-curvature classes and the
//! shape-spectrum point classification of conformally flat
//! hypersurfaces.

use crate::scalar::Real;

/// The four classes cut out by the signs of `a` and `a + k²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcClass {
    /// `a > 0`
    Class1,
    /// `a < 0` and `a + k² > 0`
    Class2,
    /// `a + k² < 0`
    Class3,
    /// `a + k² = 0`
    Class4,
}

impl QcClass {
    pub fn as_u8(self) -> u8 {
        match self {
            QcClass::Class1 => 1,
            QcClass::Class2 => 2,
            QcClass::Class3 => 3,
            QcClass::Class4 => 4,
        }
    }
}

impl std::fmt::Display for QcClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Labels a point by `(a, k)` with a zero band of width `tol`,
/// resolving boundary overlap in the listed order.
pub fn classify_qc<T: Real>(a: T, k: T, tol: T) -> QcClass {
    let ak = a + k * k;
    if a > tol {
        QcClass::Class1
    } else if a < -tol && ak > tol {
        QcClass::Class2
    } else if ak < -tol {
        QcClass::Class3
    } else if ak.abs() <= tol {
        QcClass::Class4
    } else {
        // Leftover band: a within ±tol but a + k² clearly positive.
        QcClass::Class2
    }
}

/// Point label of a conformally flat hypersurface candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeLabel {
    Hyperplane,
    Hypersphere,
    Developable,
    Canal,
    NotConformallyFlat,
}

impl ShapeLabel {
    pub fn name(self) -> &'static str {
        match self {
            ShapeLabel::Hyperplane => "hyperplane",
            ShapeLabel::Hypersphere => "hypersphere",
            ShapeLabel::Developable => "developable",
            ShapeLabel::Canal => "canal",
            ShapeLabel::NotConformallyFlat => "not_conformally_flat",
        }
    }
}

impl std::fmt::Display for ShapeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of classifying one shape spectrum.
#[derive(Clone, Debug)]
pub struct PointClassification<T> {
    pub label: ShapeLabel,
    /// Mean of the large eigenvalue cluster (when one exists).
    pub alpha: Option<T>,
    /// Simple eigenvalue minus the cluster mean.
    pub beta: Option<T>,
    /// Spread of the best candidate cluster; how far the spectrum is
    /// from an exact multiplicity-(n-1) pattern.
    pub multiplicity_gap: T,
}

/// Classifies a shape-operator spectrum by its multiplicity pattern.
///
/// A conformally flat hypersurface point must carry a shape eigenvalue
/// of multiplicity at least `n - 1`; the labels follow from which of the
/// cluster mean `α` and the residual simple value `β` vanish. Fully
/// umbilical spectra count as `β = 0`.
pub fn classify_point<T: Real>(spectrum: &[T], tol: T) -> PointClassification<T> {
    let n = spectrum.len();
    assert!(n >= 2, "need at least two shape eigenvalues");
    let mut v = spectrum.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("NaN eigenvalue"));
    let nf = T::of(n as f64);

    let all_spread = v[n - 1] - v[0];
    if all_spread <= tol {
        let alpha = v.iter().fold(T::zero(), |acc, &x| acc + x) / nf;
        let label = if alpha.abs() <= tol {
            ShapeLabel::Hyperplane
        } else {
            ShapeLabel::Hypersphere
        };
        return PointClassification {
            label,
            alpha: Some(alpha),
            beta: Some(T::zero()),
            multiplicity_gap: all_spread,
        };
    }

    let spread_low = v[n - 2] - v[0];
    let spread_high = v[n - 1] - v[1];
    let low_valid = spread_low <= tol;
    let high_valid = spread_high <= tol;
    let simple_last = match (low_valid, high_valid) {
        (true, false) => true,
        (false, true) => false,
        (true, true) => spread_low <= spread_high,
        (false, false) => {
            return PointClassification {
                label: ShapeLabel::NotConformallyFlat,
                alpha: None,
                beta: None,
                multiplicity_gap: spread_low.min(spread_high),
            }
        }
    };

    let (alpha, simple, gap) = if simple_last {
        (
            v[..n - 1].iter().fold(T::zero(), |acc, &x| acc + x) / (nf - T::one()),
            v[n - 1],
            spread_low,
        )
    } else {
        (
            v[1..].iter().fold(T::zero(), |acc, &x| acc + x) / (nf - T::one()),
            v[0],
            spread_high,
        )
    };
    let beta = simple - alpha;
    let label = match (alpha.abs() <= tol, beta.abs() <= tol) {
        (true, true) => ShapeLabel::Hyperplane,
        (false, true) => ShapeLabel::Hypersphere,
        (true, false) => ShapeLabel::Developable,
        (false, false) => ShapeLabel::Canal,
    };
    PointClassification {
        label,
        alpha: Some(alpha),
        beta: Some(beta),
        multiplicity_gap: gap,
    }
}
