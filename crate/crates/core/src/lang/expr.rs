//! Expression trees, typed values and evaluation.
//!
//! Numeric literals are decimal text, so `double` values are represented as
//! exact rationals end to end. Integer division and modulo truncate toward
//! zero; division by zero is an evaluation error, never a silent 0.

use super::ast::Span;
use crate::rational::{self, Rat};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnOp {
    Neg,
    Not,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::Eq => "=",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::And => "&",
            BinOp::Or => "|",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64, Span),
    /// Decimal literal, kept exact.
    Dec(Rat, Span),
    Bool(bool, Span),
    /// Unresolved identifier (constant, parameter or variable name).
    Ident(String, Span),
    /// Resolved state-variable reference (set during instantiation).
    Var(usize, Span),
    Unary(UnOp, Box<Expr>, Span),
    Binary(BinOp, Box<Expr>, Box<Expr>, Span),
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Int(_, s)
            | Expr::Dec(_, s)
            | Expr::Bool(_, s)
            | Expr::Ident(_, s)
            | Expr::Var(_, s)
            | Expr::Unary(_, _, s)
            | Expr::Binary(_, _, _, s) => *s,
        }
    }

    /// True if the expression contains no variable or identifier references.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Int(..) | Expr::Dec(..) | Expr::Bool(..) => true,
            Expr::Ident(..) | Expr::Var(..) => false,
            Expr::Unary(_, e, _) => e.is_constant(),
            Expr::Binary(_, a, b, _) => a.is_constant() && b.is_constant(),
        }
    }
}

/// A runtime value. `Rational` backs the `double` type exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Rational(Rat),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "int",
            Value::Bool(_) => "bool",
            Value::Rational(_) => "double",
        }
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match self {
            Value::Int(n) => Some(Rat::from_integer(*n)),
            Value::Rational(r) => Some(*r),
            Value::Bool(_) => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(n) => Some(*n),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("{span}: division by zero")]
    DivisionByZero { span: Span },
    #[error("{span}: modulo by zero")]
    ModuloByZero { span: Span },
    #[error("{span}: arithmetic overflow")]
    Overflow { span: Span },
    #[error("{span}: unknown identifier `{name}`")]
    UnknownIdent { name: String, span: Span },
    #[error("{span}: type error: {message}")]
    Type { message: String, span: Span },
}

fn type_err(span: Span, message: impl Into<String>) -> EvalError {
    EvalError::Type {
        message: message.into(),
        span,
    }
}

/// Evaluate an expression. `lookup` resolves `Ident` nodes, `var` resolves
/// `Var` nodes (indices into a state vector).
pub fn eval(
    expr: &Expr,
    lookup: &dyn Fn(&str) -> Option<Value>,
    var: &dyn Fn(usize) -> Value,
) -> Result<Value, EvalError> {
    match expr {
        Expr::Int(n, _) => Ok(Value::Int(*n)),
        Expr::Dec(r, _) => Ok(Value::Rational(*r)),
        Expr::Bool(b, _) => Ok(Value::Bool(*b)),
        Expr::Var(i, _) => Ok(var(*i)),
        Expr::Ident(name, span) => lookup(name).ok_or_else(|| EvalError::UnknownIdent {
            name: name.clone(),
            span: *span,
        }),
        Expr::Unary(op, inner, span) => {
            let v = eval(inner, lookup, var)?;
            match (op, v) {
                (UnOp::Neg, Value::Int(n)) => n
                    .checked_neg()
                    .map(Value::Int)
                    .ok_or(EvalError::Overflow { span: *span }),
                (UnOp::Neg, Value::Rational(r)) => Ok(Value::Rational(-r)),
                (UnOp::Not, Value::Bool(b)) => Ok(Value::Bool(!b)),
                (op, v) => Err(type_err(
                    *span,
                    format!("cannot apply `{op:?}` to {}", v.type_name()),
                )),
            }
        }
        Expr::Binary(op, lhs, rhs, span) => {
            // Short-circuit the boolean connectives.
            if matches!(op, BinOp::And | BinOp::Or) {
                let l = expect_bool(eval(lhs, lookup, var)?, *span)?;
                return match (op, l) {
                    (BinOp::And, false) => Ok(Value::Bool(false)),
                    (BinOp::Or, true) => Ok(Value::Bool(true)),
                    _ => Ok(Value::Bool(expect_bool(eval(rhs, lookup, var)?, *span)?)),
                };
            }
            let l = eval(lhs, lookup, var)?;
            let r = eval(rhs, lookup, var)?;
            eval_binary(*op, l, r, *span)
        }
    }
}

fn expect_bool(v: Value, span: Span) -> Result<bool, EvalError> {
    v.as_bool()
        .ok_or_else(|| type_err(span, format!("expected bool, found {}", v.type_name())))
}

fn eval_binary(op: BinOp, l: Value, r: Value, span: Span) -> Result<Value, EvalError> {
    use BinOp::*;
    match op {
        Eq | Ne => {
            let equal = match (&l, &r) {
                (Value::Bool(a), Value::Bool(b)) => a == b,
                _ => {
                    let (a, b) = both_rat(&l, &r, span)?;
                    a == b
                }
            };
            Ok(Value::Bool(if op == Eq { equal } else { !equal }))
        }
        Lt | Le | Gt | Ge => {
            let (a, b) = both_rat(&l, &r, span)?;
            Ok(Value::Bool(match op {
                Lt => a < b,
                Le => a <= b,
                Gt => a > b,
                Ge => a >= b,
                _ => unreachable!(),
            }))
        }
        Add | Sub | Mul | Div | Mod => match (&l, &r) {
            (Value::Int(a), Value::Int(b)) => eval_int_arith(op, *a, *b, span),
            _ => {
                let (a, b) = both_rat(&l, &r, span)?;
                let out = match op {
                    Add => rational::checked_add(a, b),
                    Sub => rational::checked_sub(a, b),
                    Mul => rational::checked_mul(a, b),
                    Div => {
                        if b.is_zero() {
                            return Err(EvalError::DivisionByZero { span });
                        }
                        rational::checked_div(a, b)
                    }
                    Mod => {
                        return Err(type_err(span, "modulo requires integer operands"));
                    }
                    _ => unreachable!(),
                };
                out.map(Value::Rational)
                    .ok_or(EvalError::Overflow { span })
            }
        },
        And | Or => unreachable!("handled by caller"),
    }
}

fn eval_int_arith(op: BinOp, a: i64, b: i64, span: Span) -> Result<Value, EvalError> {
    let out = match op {
        BinOp::Add => a.checked_add(b),
        BinOp::Sub => a.checked_sub(b),
        BinOp::Mul => a.checked_mul(b),
        BinOp::Div => {
            if b == 0 {
                return Err(EvalError::DivisionByZero { span });
            }
            // Truncation toward zero is `checked_div` on i64.
            a.checked_div(b)
        }
        BinOp::Mod => {
            if b == 0 {
                return Err(EvalError::ModuloByZero { span });
            }
            a.checked_rem(b)
        }
        _ => unreachable!(),
    };
    out.map(Value::Int).ok_or(EvalError::Overflow { span })
}

fn both_rat(l: &Value, r: &Value, span: Span) -> Result<(Rat, Rat), EvalError> {
    match (l.as_rat(), r.as_rat()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(type_err(
            span,
            format!(
                "cannot combine {} and {} numerically",
                l.type_name(),
                r.type_name()
            ),
        )),
    }
}
