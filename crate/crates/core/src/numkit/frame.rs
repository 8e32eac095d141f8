//! Deterministic orthonormal frames adapted to a curve tangent.
//!
//! Both constructions are Gram–Schmidt sweeps over the canonical basis
//! with a fixed pivot rule, so identical inputs always produce identical
//! frames. They run on jets as well as plain numbers; every branch
//! decision uses base values only, which keeps jet derivatives exact on
//! the chosen branch.

use num_traits::{Float, One, Zero};

use crate::numkit::ambient::{inner, AmbientVector, Signature};
use crate::numkit::FrameError;
use crate::scalar::{GeomScalar, Real};

/// Residuals with signature-norm below this are treated as pivot
/// degeneracies and skipped.
const PIVOT_SKIP: f64 = 1e-10;

/// Orthonormal frame with per-vector metric signs (`inner(f, f) = ±1`).
#[derive(Clone, Debug)]
pub struct OrthoFrame<S> {
    pub vectors: Vec<AmbientVector<S>>,
    pub signs: Vec<i8>,
}

impl<S: GeomScalar> OrthoFrame<S> {
    /// Index of the unique timelike frame vector, if any.
    pub fn timelike_index(&self) -> Option<usize> {
        self.signs.iter().position(|&s| s < 0)
    }
}

fn is_null<S: GeomScalar>(v: &AmbientVector<S>, sig: &Signature) -> bool {
    let q = inner(v, v, sig).base();
    let mag = v.euclidean_square();
    q.abs() <= S::Base::of(1e-10) * mag
}

/// Orthonormal basis of the orthogonal complement of a non-null vector.
///
/// Produced by projecting the canonical basis off `t` and off previously
/// accepted vectors, skipping candidates whose residual norm falls below
/// `1e-10`. Each output vector is normalized to `inner(f, f) = ±1`.
pub fn orthonormal_complement_frame<S: GeomScalar>(
    t: &AmbientVector<S>,
    sig: &Signature,
) -> Result<OrthoFrame<S>, FrameError> {
    let dim = sig.dim();
    assert_eq!(t.dim(), dim, "tangent/signature dimension mismatch");
    if t.euclidean_square().is_zero() {
        return Err(FrameError::Degenerate("zero tangent vector".into()));
    }
    if is_null(t, sig) {
        return Err(FrameError::Degenerate(
            "tangent is lightlike; use the pseudo-null frame".into(),
        ));
    }
    let tq = inner(t, t, sig);
    let mut frame = OrthoFrame {
        vectors: Vec::with_capacity(dim - 1),
        signs: Vec::with_capacity(dim - 1),
    };
    for axis in 0..dim {
        if frame.vectors.len() == dim - 1 {
            break;
        }
        let cand: AmbientVector<S> = AmbientVector::basis_like(&t.coords[0], dim, axis);
        // Project off t (not assumed normalized) and accepted vectors.
        let ct = inner(&cand, t, sig) / tq.clone();
        let mut r = &cand - &t.scale(&ct);
        for (f, &sign) in frame.vectors.iter().zip(&frame.signs) {
            let mut c = inner(&r, f, sig);
            if sign < 0 {
                c = -c;
            }
            r = &r - &f.scale(&c);
        }
        let rq = inner(&r, &r, sig);
        let norm = rq.abs_val().sqrt_pos();
        if norm.base() < S::Base::of(PIVOT_SKIP) {
            continue;
        }
        let sign = if rq.base() < S::Base::zero() { -1 } else { 1 };
        let inv = r.coords[0].lift(S::Base::one()) / norm;
        frame.vectors.push(r.scale(&inv));
        frame.signs.push(sign);
    }
    if frame.vectors.len() != dim - 1 {
        return Err(FrameError::Degenerate(
            "complement frame came up short; tangent too close to null".into(),
        ));
    }
    Ok(frame)
}

/// Frame adapted to a lightlike tangent `t`: a partner null vector `m`
/// with `inner(t, m) = -1`, plus `dim - 2` spacelike unit vectors
/// orthogonal to both and to each other.
#[derive(Clone, Debug)]
pub struct PseudoNullFrame<S> {
    pub partner: AmbientVector<S>,
    pub spacelike: Vec<AmbientVector<S>>,
}

pub fn pseudo_null_frame<S: GeomScalar>(
    t: &AmbientVector<S>,
    sig: &Signature,
) -> Result<PseudoNullFrame<S>, FrameError> {
    let dim = sig.dim();
    assert_eq!(t.dim(), dim, "tangent/signature dimension mismatch");
    if !sig.is_minkowski() {
        return Err(FrameError::Degenerate(
            "pseudo-null frames need a Lorentzian signature".into(),
        ));
    }
    if t.euclidean_square().is_zero() {
        return Err(FrameError::Degenerate("zero tangent vector".into()));
    }
    if !is_null(t, sig) {
        return Err(FrameError::Degenerate(
            "tangent is not lightlike".into(),
        ));
    }
    // Reflect the spatial part; the result is null and not parallel to t.
    let mut refl = t.clone();
    for i in 1..dim {
        refl.coords[i] = -refl.coords[i].clone();
    }
    let d = inner(t, &refl, sig); // equals -2 t₀², strictly negative
    if d.base() >= S::Base::zero() {
        return Err(FrameError::Degenerate(
            "lightlike tangent with vanishing time component".into(),
        ));
    }
    let inv = -(t.coords[0].lift(S::Base::one()) / d);
    let partner = refl.scale(&inv);

    let mut spacelike: Vec<AmbientVector<S>> = Vec::with_capacity(dim - 2);
    for axis in 0..dim {
        if spacelike.len() == dim - 2 {
            break;
        }
        let cand: AmbientVector<S> = AmbientVector::basis_like(&t.coords[0], dim, axis);
        // Orthogonal projection off span{t, m} in the null pairing.
        let ct = inner(&cand, t, sig);
        let cm = inner(&cand, &partner, sig);
        let mut r = &(&cand + &t.scale(&cm)) + &partner.scale(&ct);
        for e in &spacelike {
            let c = inner(&r, e, sig);
            r = &r - &e.scale(&c);
        }
        let rq = inner(&r, &r, sig);
        let norm = rq.abs_val().sqrt_pos();
        if norm.base() < S::Base::of(PIVOT_SKIP) {
            continue;
        }
        if rq.base() < S::Base::zero() {
            return Err(FrameError::Degenerate(
                "unexpected timelike residual in pseudo-null construction".into(),
            ));
        }
        let inv = r.coords[0].lift(S::Base::one()) / norm;
        spacelike.push(r.scale(&inv));
    }
    if spacelike.len() != dim - 2 {
        return Err(FrameError::Degenerate(
            "pseudo-null frame came up short".into(),
        ));
    }
    Ok(PseudoNullFrame { partner, spacelike })
}
