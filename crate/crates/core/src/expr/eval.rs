use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::order;
use crate::real::FermatReal;
use crate::smooth::{self, ElementaryFn};

use super::{parse, BinOp, Expr};

pub type Env = HashMap<String, FermatReal>;

/// Evaluates an expression bottom-up over Fermat reals.
///
/// `^` with an integer literal exponent (optionally negated) uses repeated
/// multiplication, followed by an inverse for negative exponents; any other
/// exponent goes through the general power and needs a positive base.
pub fn eval(e: &Expr, env: &Env) -> Result<FermatReal> {
    match e {
        Expr::Num(v) => Ok(FermatReal::real(*v)),
        Expr::Dt(order) => FermatReal::dt(order),
        Expr::Var(name) => match env.get(name) {
            Some(v) => Ok(v.clone()),
            None => match name.as_str() {
                "pi" => Ok(FermatReal::real(std::f64::consts::PI)),
                "e" => Ok(FermatReal::real(std::f64::consts::E)),
                _ => Err(Error::UnboundVariable(name.clone())),
            },
        },
        Expr::Neg(inner) => Ok(eval(inner, env)?.neg()),
        Expr::Binary(op, lhs, rhs) => {
            if *op == BinOp::Pow {
                let base = eval(lhs, env)?;
                if let Some(n) = integer_literal(rhs) {
                    let p = base.pow_nat(n.unsigned_abs());
                    return if n < 0 { p.invert() } else { Ok(p) };
                }
                return smooth::pow(&base, &eval(rhs, env)?);
            }
            let a = eval(lhs, env)?;
            let b = eval(rhs, env)?;
            match op {
                BinOp::Add => Ok(a.add(&b)),
                BinOp::Sub => Ok(a.sub(&b)),
                BinOp::Mul => Ok(a.mul(&b)),
                BinOp::Div => a.div(&b),
                BinOp::Pow => unreachable!(),
            }
        }
        Expr::Call(name, args) => {
            let values = args
                .iter()
                .map(|a| eval(a, env))
                .collect::<Result<Vec<_>>>()?;
            call(name, &values)
        }
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str, env: &Env) -> Result<FermatReal> {
    eval(&parse(text)?, env)
}

fn integer_literal(e: &Expr) -> Option<i64> {
    const LIMIT: f64 = (1u64 << 53) as f64;
    match e {
        Expr::Num(v) if v.fract() == 0.0 && v.abs() < LIMIT => Some(*v as i64),
        Expr::Neg(inner) => integer_literal(inner).map(|n| -n),
        _ => None,
    }
}

fn call(name: &str, args: &[FermatReal]) -> Result<FermatReal> {
    let arity = |expected: usize| {
        if args.len() == expected {
            Ok(())
        } else {
            Err(Error::Arity {
                name: name.to_string(),
                expected,
                found: args.len(),
            })
        }
    };
    match name {
        "pow" => {
            arity(2)?;
            smooth::pow(&args[0], &args[1])
        }
        "log" => {
            arity(2)?;
            smooth::log(&args[0], &args[1])
        }
        "abs" => {
            arity(1)?;
            Ok(order::abs(&args[0]))
        }
        _ => {
            let f = ElementaryFn::from_name(name)
                .ok_or_else(|| Error::UnknownFunction(name.to_string()))?;
            arity(1)?;
            smooth::ext_apply(f, &args[0])
        }
    }
}
