//! Minimal arithmetic expression language for radius profiles and
//! center-curve coordinates.
//!
//! Expressions are parsed once into an immutable tree and evaluated on
//! truncated Taylor series, so every derivative downstream is exact.
//! The grammar is a bit-exact configuration contract; see the parser
//! module for the EBNF.

mod eval;
mod parser;

pub use eval::{eval_jet, eval_taylor, eval_value};
pub use parser::parse;

use std::fmt;

use thiserror::Error;

use crate::numkit::Taylor1;
use crate::scalar::Real;
use crate::shapes::CanalKind;

/// Abstract syntax tree over the single variable `s`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, _, _) => op.precedence(),
            Expr::Neg(_) => 3,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let me = self.precedence();
        let parens = me < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Expr::Number(x) => {
                if x.fract() == 0.0 && x.abs() < 1e15 {
                    write!(f, "{}", *x as i64)?;
                } else {
                    write!(f, "{x}")?;
                }
            }
            Expr::Var => write!(f, "s")?,
            Expr::Neg(inner) => {
                write!(f, "-")?;
                inner.fmt_prec(f, 3)?;
            }
            Expr::Binary(op, lhs, rhs) => {
                let p = op.precedence();
                // Power is right-associative, the rest left-associative.
                let (lp, rp) = if *op == BinOp::Pow {
                    (p + 1, 3)
                } else {
                    (p, p + 1)
                };
                lhs.fmt_prec(f, lp)?;
                write!(f, " {} ", op.symbol())?;
                rhs.fmt_prec(f, rp)?;
            }
            Expr::Call(func, arg) => {
                write!(f, "{}(", func.name())?;
                arg.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Parse failure with a byte offset into the source.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: String) -> Self {
        Self { offset, message }
    }
}

/// Evaluation failure; the message names the offending subexpression.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{message}")]
pub struct EvalError {
    pub message: String,
}

/// A parsed profile together with its closed parameter interval.
#[derive(Clone, Debug)]
pub struct ProfileSpec<T> {
    pub source: String,
    pub expr: Expr,
    pub domain: (T, T),
}

impl<T: Real> ProfileSpec<T> {
    pub fn new(source: &str, domain: (T, T)) -> Result<Self, ParseError> {
        Ok(Self {
            source: source.to_owned(),
            expr: parse(source)?,
            domain,
        })
    }

    pub fn eval_taylor(&self, s0: T) -> Result<Taylor1<T>, EvalError> {
        eval_taylor(&self.expr, s0)
    }

    pub fn eval_value(&self, s0: T) -> Result<T, EvalError> {
        eval_value(&self.expr, s0)
    }
}

/// Chebyshev nodes of the first kind mapped to `[lo, hi]`, ascending.
pub fn chebyshev_nodes<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    assert!(count >= 2, "need at least two sample nodes");
    let mid = (lo + hi) * T::of(0.5);
    let half = (hi - lo) * T::of(0.5);
    let mut nodes: Vec<T> = (0..count)
        .map(|j| {
            let theta = std::f64::consts::PI * (2.0 * j as f64 + 1.0) / (2.0 * count as f64);
            mid + half * T::of(theta.cos())
        })
        .collect();
    nodes.reverse(); // ascending in s
    nodes
}

/// One violated constraint at a sample point.
#[derive(Clone, Debug)]
pub struct ProfileViolation<T> {
    pub s: T,
    pub constraint: String,
}

/// Outcome of sampling a profile against its kind constraints.
#[derive(Clone, Debug)]
pub struct ProfileValidation<T> {
    pub samples: usize,
    pub first_violation: Option<ProfileViolation<T>>,
}

impl<T> ProfileValidation<T> {
    pub fn is_valid(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks the kind-specific radius constraints at Chebyshev-distributed
/// sample points of the profile domain. Violations are report content,
/// not errors; evaluation failures count as violations.
pub fn validate_profile<T: Real>(
    p: &ProfileSpec<T>,
    kind: CanalKind,
    samples: usize,
) -> ProfileValidation<T> {
    let nodes = chebyshev_nodes(p.domain.0, p.domain.1, samples);
    for s in nodes {
        let t = match p.eval_taylor(s) {
            Ok(t) => t,
            Err(e) => {
                return ProfileValidation {
                    samples,
                    first_violation: Some(ProfileViolation {
                        s,
                        constraint: e.message,
                    }),
                }
            }
        };
        let r = t.value();
        let rp = t.derivative(1);
        if !r.is_finite() || !rp.is_finite() {
            return ProfileValidation {
                samples,
                first_violation: Some(ProfileViolation {
                    s,
                    constraint: "profile is not finite".into(),
                }),
            };
        }
        let violated = match kind {
            CanalKind::Elliptic => {
                if r <= T::zero() {
                    Some("R > 0")
                } else if rp * rp <= T::one() {
                    Some("R'^2 > 1")
                } else {
                    None
                }
            }
            CanalKind::Hyperbolic => (r <= T::zero()).then_some("R > 0"),
            CanalKind::Parabolic => {
                if r <= T::zero() {
                    Some("R > 0")
                } else if rp.is_zero() {
                    Some("R' != 0")
                } else {
                    None
                }
            }
            CanalKind::Euclidean => {
                if r <= T::zero() {
                    Some("R > 0")
                } else if rp * rp >= T::one() {
                    Some("R'^2 < 1")
                } else {
                    None
                }
            }
        };
        if let Some(c) = violated {
            return ProfileValidation {
                samples,
                first_violation: Some(ProfileViolation {
                    s,
                    constraint: c.into(),
                }),
            };
        }
    }
    ProfileValidation {
        samples,
        first_violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(src: &str, lo: f64, hi: f64) -> ProfileSpec<f64> {
        ProfileSpec::new(src, (lo, hi)).unwrap()
    }

    #[test]
    fn elliptic_square_profile_valid() {
        // R' = 2s stays above 1 on [0.9, 1.1].
        let p = profile("s^2", 0.9, 1.1);
        assert!(validate_profile(&p, CanalKind::Elliptic, 17).is_valid());
    }

    #[test]
    fn euclidean_square_profile_invalid() {
        // Same profile fails the Euclidean slope bound R'² < 1.
        let p = profile("s^2", 0.9, 1.1);
        let v = validate_profile(&p, CanalKind::Euclidean, 17);
        assert!(!v.is_valid());
        assert_eq!(v.first_violation.unwrap().constraint, "R'^2 < 1");
    }

    #[test]
    fn euclidean_flat_profile_valid() {
        // R' = s/2 ≤ 3/4 on [0.5, 1.5].
        let p = profile("1 + s^2/4", 0.5, 1.5);
        assert!(validate_profile(&p, CanalKind::Euclidean, 17).is_valid());
    }

    #[test]
    fn display_reparses_to_same_tree() {
        for src in [
            "s^2",
            "2*s + sin(s)",
            "-s^2",
            "s^-2",
            "(1 + s)/(1 - s)",
            "sqrt(1 + s^2)",
            "s - -s",
            "2^s^2",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            let e2 = parse(&printed).unwrap_or_else(|err| {
                panic!("`{printed}` failed to reparse: {err}");
            });
            assert_eq!(e, e2, "round trip failed for `{src}` -> `{printed}`");
        }
    }
}
