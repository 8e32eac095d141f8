//! Expression evaluation on truncated Taylor series.
//!
//! Evaluation runs on degree-four univariate series, which is exactly
//! what chart construction needs; the public jet form truncates to order
//! three. Domain violations name the offending subexpression.

use super::{BinOp, EvalError, Expr, Func};
use crate::numkit::taylor1::Taylor1;
use crate::numkit::{DomainError, Jet};
use crate::scalar::Real;

fn wrap<T>(r: Result<T, DomainError>, node: &Expr) -> Result<T, EvalError> {
    r.map_err(|e| EvalError {
        message: format!("{e} in `{node}`"),
    })
}

/// Treats an exponent series as a constant integer when it has no
/// derivative content and an integral value.
fn as_const_integer<T: Real>(t: &Taylor1<T>) -> Option<i64> {
    for k in 1..crate::numkit::taylor1::TAYLOR1_LEN {
        if !t.coeff(k).is_zero() {
            return None;
        }
    }
    let v = t.value().to_f64()?;
    if v.fract() == 0.0 && v.abs() <= 2147483648.0 {
        Some(v as i64)
    } else {
        None
    }
}

/// Evaluates `e` as a degree-four Taylor series at `s0`.
pub fn eval_taylor<T: Real>(e: &Expr, s0: T) -> Result<Taylor1<T>, EvalError> {
    match e {
        Expr::Number(x) => Ok(Taylor1::constant(T::of(*x))),
        Expr::Var => Ok(Taylor1::variable(s0)),
        Expr::Neg(inner) => Ok(eval_taylor(inner, s0)?.neg()),
        Expr::Binary(op, lhs, rhs) => {
            let a = eval_taylor(lhs, s0)?;
            let b = eval_taylor(rhs, s0)?;
            match op {
                BinOp::Add => Ok(a.add(&b)),
                BinOp::Sub => Ok(a.sub(&b)),
                BinOp::Mul => Ok(a.mul(&b)),
                BinOp::Div => wrap(a.div(&b), e),
                BinOp::Pow => match as_const_integer(&b) {
                    Some(n) => wrap(a.powi(n), e),
                    None => wrap(a.powf(&b), e),
                },
            }
        }
        Expr::Call(func, arg) => {
            let a = eval_taylor(arg, s0)?;
            match func {
                Func::Sin => Ok(a.sin()),
                Func::Cos => Ok(a.cos()),
                Func::Sinh => Ok(a.sinh()),
                Func::Cosh => Ok(a.cosh()),
                Func::Exp => Ok(a.exp()),
                Func::Ln => wrap(a.ln(), e),
                Func::Sqrt => wrap(a.sqrt(), e),
            }
        }
    }
}

/// Exact order-three jet of `e` at `s0` (one variable).
pub fn eval_jet<T: Real>(e: &Expr, s0: T) -> Result<Jet<T>, EvalError> {
    let t = eval_taylor(e, s0)?;
    Ok(Jet::from_taylor1(&t, 1, 0, 0))
}

/// Plain value of `e` at `s0`.
pub fn eval_value<T: Real>(e: &Expr, s0: T) -> Result<T, EvalError> {
    Ok(eval_taylor(e, s0)?.value())
}
