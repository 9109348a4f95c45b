//! Evaluation of parsed expressions. Values live in one of four rings and
//! are promoted as needed: scalars embed everywhere, and level-one forms
//! become q-series when combined with `q`.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;
use tmf3_core::exact_arith::{fmt_rational, Rational};
use tmf3_core::levelmaps::{delta, fstar, hstar, qstar, tstar, Gamma03Form, LevelOneForm};
use tmf3_core::polyring::{LocElem, MultiPoly, A1A3};
use tmf3_core::qexp::{series_of, QSeries};
use tmf3_core::ring::Ring;

use crate::expr::{BinOp, Expr, Func, Ident};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("cannot combine {0} with {1}")]
    Mixed(&'static str, &'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not invertible here")]
    NotInvertible(String),
    #[error("exponent {0} must be an integer")]
    BadExponent(String),
    #[error("{0} expects {1}")]
    BadArgument(&'static str, &'static str),
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Rational),
    /// `Q[c4, c6, Delta^+-1] / (c4^3 - c6^2 - 1728 Delta)`.
    LevelOne(LevelOneForm),
    /// `Q[a1, a3][Delta^-1]`.
    LevelThree(LocElem),
    Series(QSeries),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "a number",
            Value::LevelOne(_) => "a level-one form",
            Value::LevelThree(_) => "an expression in a1, a3",
            Value::Series(_) => "a q-series",
        }
    }

    pub fn as_level_one(&self) -> Option<LevelOneForm> {
        match self {
            Value::Scalar(c) => Some(LevelOneForm::constant(c.clone())),
            Value::LevelOne(m) => Some(m.clone()),
            _ => None,
        }
    }

    pub fn as_level_three(&self) -> Option<LocElem> {
        match self {
            Value::Scalar(c) => Some(LocElem::constant(c.clone())),
            Value::LevelThree(x) => Some(x.clone()),
            _ => None,
        }
    }

    /// A polynomial in `a1, a3` (no denominators).
    pub fn as_poly(&self) -> Option<MultiPoly> {
        match self {
            Value::Scalar(c) => Some(MultiPoly::constant(A1A3, c.clone())),
            Value::LevelThree(x) => x.as_poly().cloned(),
            _ => None,
        }
    }

    /// Constants of every ring are written as scalars, so equal values compare equal.
    fn canonical(self) -> Value {
        let constant = match &self {
            Value::LevelOne(m) => match m.terms().collect::<Vec<_>>()[..] {
                [] => Some(Rational::zero()),
                [(&(0, 0, 0), c)] => Some(c.clone()),
                _ => None,
            },
            Value::LevelThree(x) => x.as_poly().filter(|p| p.is_constant()).map(|p| p.constant_term()),
            _ => None,
        };
        constant.map_or(self, Value::Scalar)
    }

    pub fn as_scalar(&self) -> Option<&Rational> {
        match self {
            Value::Scalar(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{}", fmt_rational(c)),
            Value::LevelOne(m) => write!(f, "{m}"),
            Value::LevelThree(x) => write!(f, "{x}"),
            Value::Series(s) => write!(f, "{s}"),
        }
    }
}

pub struct Evaluator {
    /// Precision of `q` and of level-one forms turned into series.
    pub precision: usize,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator { precision: 20 }
    }
}

fn series_inverse(s: &QSeries) -> Result<QSeries, EvalError> {
    let c0 = s.coeff(0).clone();
    if c0.is_zero() {
        return Err(EvalError::NotInvertible(s.to_string()));
    }
    let n = s.precision();
    let mut out = vec![Rational::zero(); n + 1];
    out[0] = c0.recip();
    for m in 1..=n {
        let mut acc = Rational::zero();
        for k in 1..=m {
            acc += s.coeff(k) * &out[m - k];
        }
        out[m] = -acc / &c0;
    }
    Ok(QSeries::new(out))
}

/// The inverse of `c c4^0 c6^0 Delta^d`; other level-one forms are not units.
fn level_one_inverse(m: &LevelOneForm) -> Result<LevelOneForm, EvalError> {
    let terms: Vec<_> = m.terms().collect();
    match terms[..] {
        [(&(0, 0, d), c)] => Ok(LevelOneForm::monomial((0, 0, -d), c.recip())),
        [] => Err(EvalError::DivisionByZero),
        _ => Err(EvalError::NotInvertible(m.to_string())),
    }
}

impl Evaluator {
    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        self.eval_node(e).map(Value::canonical)
    }

    fn eval_node(&self, e: &Expr) -> Result<Value, EvalError> {
        match e {
            Expr::Int(n) => Ok(Value::Scalar(Rational::from_integer(n.clone()))),
            Expr::Var(id) => self.var(*id),
            Expr::Neg(x) => self.neg(self.eval(x)?),
            Expr::Bin(op, l, r) => {
                let (l, r) = (self.eval(l)?, self.eval(r)?);
                match op {
                    BinOp::Add => self.add(l, r),
                    BinOp::Sub => {
                        let r = self.neg(r)?;
                        self.add(l, r)
                    }
                    BinOp::Mul => self.mul(l, r),
                    BinOp::Div => {
                        let r = self.inverse(r)?;
                        self.mul(l, r)
                    }
                }
            }
            Expr::Pow(b, x) => {
                let b = self.eval(b)?;
                let x = self.eval(x)?;
                let k = x
                    .as_scalar()
                    .filter(|c| c.is_integer())
                    .and_then(|c| c.to_integer().to_i64())
                    .ok_or_else(|| EvalError::BadExponent(x.to_string()))?;
                self.pow(b, k)
            }
            Expr::Call(Func::BigO, x) => self.big_o(x),
            Expr::Call(f, x) => self.call(*f, self.eval(x)?),
        }
    }

    fn var(&self, id: Ident) -> Result<Value, EvalError> {
        Ok(match id {
            Ident::A1 => Value::LevelThree(LocElem::from_poly(MultiPoly::var(A1A3, "a1"))),
            Ident::A3 => Value::LevelThree(LocElem::from_poly(MultiPoly::var(A1A3, "a3"))),
            Ident::C4 => Value::LevelOne(LevelOneForm::c4()),
            Ident::C6 => Value::LevelOne(LevelOneForm::c6()),
            Ident::Delta => Value::LevelOne(LevelOneForm::delta()),
            Ident::Q => {
                let mut c = vec![Rational::zero(); self.precision + 1];
                if self.precision >= 1 {
                    c[1] = Rational::one();
                }
                Value::Series(QSeries::new(c))
            }
            Ident::X | Ident::Y => {
                return Err(EvalError::Domain(format!("{} is a coordinate on the curve and has no value here", id.name())))
            }
        })
    }

    pub fn to_series(&self, v: &Value) -> Result<QSeries, EvalError> {
        match v {
            Value::Series(s) => Ok(s.clone()),
            Value::Scalar(c) => Ok(QSeries::constant(c.clone(), self.precision)),
            Value::LevelOne(m) => series_of(m, self.precision).map_err(|e| EvalError::Domain(e.to_string())),
            Value::LevelThree(_) => Err(EvalError::Mixed("an expression in a1, a3", "a q-series")),
        }
    }

    /// Brings two values into a common ring.
    fn unify(&self, l: Value, r: Value) -> Result<(Value, Value), EvalError> {
        use Value::*;
        let kinds = (l.kind(), r.kind());
        match (&l, &r) {
            (LevelThree(_), Series(_) | LevelOne(_)) | (Series(_) | LevelOne(_), LevelThree(_)) => {
                Err(EvalError::Mixed(kinds.0, kinds.1))
            }
            (Series(_), _) | (_, Series(_)) => Ok((Series(self.to_series(&l)?), Series(self.to_series(&r)?))),
            (LevelOne(_), _) | (_, LevelOne(_)) => {
                Ok((LevelOne(l.as_level_one().expect("promotes")), LevelOne(r.as_level_one().expect("promotes"))))
            }
            (LevelThree(_), _) | (_, LevelThree(_)) => {
                Ok((LevelThree(l.as_level_three().expect("promotes")), LevelThree(r.as_level_three().expect("promotes"))))
            }
            _ => Ok((l, r)),
        }
    }

    fn add(&self, l: Value, r: Value) -> Result<Value, EvalError> {
        use Value::*;
        Ok(match self.unify(l, r)? {
            (Scalar(a), Scalar(b)) => Scalar(a + b),
            (LevelOne(a), LevelOne(b)) => LevelOne(a + b),
            (LevelThree(a), LevelThree(b)) => LevelThree(a + b),
            (Series(a), Series(b)) => Series(&a + &b),
            _ => unreachable!("unify returns matching kinds"),
        })
    }

    fn mul(&self, l: Value, r: Value) -> Result<Value, EvalError> {
        use Value::*;
        Ok(match self.unify(l, r)? {
            (Scalar(a), Scalar(b)) => Scalar(a * b),
            (LevelOne(a), LevelOne(b)) => LevelOne(a * b),
            (LevelThree(a), LevelThree(b)) => LevelThree(a * b),
            (Series(a), Series(b)) => Series(&a * &b),
            _ => unreachable!("unify returns matching kinds"),
        })
    }

    fn neg(&self, v: Value) -> Result<Value, EvalError> {
        self.mul(Value::Scalar(-Rational::one()), v)
    }

    fn inverse(&self, v: Value) -> Result<Value, EvalError> {
        match v {
            Value::Scalar(c) if c.is_zero() => Err(EvalError::DivisionByZero),
            Value::Scalar(c) => Ok(Value::Scalar(c.recip())),
            Value::LevelOne(m) => Ok(Value::LevelOne(level_one_inverse(&m)?)),
            Value::LevelThree(x) if x.is_zero() => Err(EvalError::DivisionByZero),
            Value::LevelThree(x) => x.try_inv().map(Value::LevelThree).map_err(|_| EvalError::NotInvertible(x.to_string())),
            Value::Series(s) => series_inverse(&s).map(Value::Series),
        }
    }

    fn pow(&self, b: Value, k: i64) -> Result<Value, EvalError> {
        let base = if k < 0 { self.inverse(b)? } else { b };
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| EvalError::BadExponent(k.to_string()))?;
        Ok(match base {
            Value::Scalar(c) => Value::Scalar(num_traits::pow(c, e as usize)),
            Value::LevelOne(m) => Value::LevelOne(m.pow(e)),
            Value::LevelThree(x) => Value::LevelThree(x.pow_u(e)),
            Value::Series(s) => Value::Series(s.pow(e)),
        })
    }

    /// `O(q^N)` is the zero series known through `q^(N-1)`.
    fn big_o(&self, x: &Expr) -> Result<Value, EvalError> {
        let n = match x {
            Expr::Var(Ident::Q) => Some(1),
            Expr::Pow(b, e) if **b == Expr::Var(Ident::Q) => match &**e {
                Expr::Int(n) if n.is_positive() => n.to_usize(),
                _ => None,
            },
            _ => None,
        };
        let n = n.ok_or(EvalError::BadArgument("O", "q^N with N >= 1"))?;
        Ok(Value::Series(QSeries::zero(n - 1)))
    }

    fn call(&self, f: Func, v: Value) -> Result<Value, EvalError> {
        let level_one = |name| v.as_level_one().ok_or(EvalError::BadArgument(name, "a level-one form"));
        Ok(match f {
            Func::Fstar => Value::LevelThree(fstar(&level_one("fstar")?).into_inner()),
            Func::Qstar => Value::LevelThree(qstar(&level_one("qstar")?).into_inner()),
            Func::Hstar => Value::LevelOne(hstar(&level_one("hstar")?)),
            Func::Delta => Value::LevelThree(delta(&level_one("delta")?).into_inner()),
            Func::Tstar => {
                let x = v.as_level_three().ok_or(EvalError::BadArgument("tstar", "an expression in a1, a3"))?;
                let g = Gamma03Form::try_new(x).map_err(|e| EvalError::Domain(e.to_string()))?;
                Value::LevelThree(tstar(&g).into_inner())
            }
            Func::BigO => unreachable!("handled before evaluating the argument"),
        })
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str, precision: usize) -> Result<Value, crate::CliError> {
    let e = crate::expr::parse(text)?;
    Ok(Evaluator { precision }.eval(&e)?)
}
