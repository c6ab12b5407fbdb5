//! Expression language: syntax tree, parser, evaluator and canonical
//! formatter.
//!
//! The grammar (see `docs/grammar.ebnf`):
//!
//! ```text
//! expr    = sum ;
//! sum     = product , { ( "+" | "-" ) , product } ;
//! product = unary , { ( "*" | "/" ) , unary } ;
//! unary   = ( "-" | "+" ) , unary | power ;
//! power   = atom , [ "^" , unary ] ;
//! atom    = number | dt | call | ident | "(" , expr , ")" ;
//! dt      = "dt" , [ "[" , order , "]" ] ;
//! order   = [ "-" ] , decimal , [ "/" , decimal ] ;
//! call    = ident , "(" , expr , { "," , expr } , ")" ;
//! ```

mod eval;
mod format;
mod parser;

use std::collections::BTreeSet;
use std::fmt;

use crate::exponent::Exponent;

pub use eval::{eval, eval_str, Env};
pub use format::{format, format_real, to_json, FermatJson, TermJson};
pub use parser::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    /// `dt[order]`.
    Dt(Exponent),
    Var(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

impl Expr {
    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    /// Free variable names in first-occurrence order, excluding the built-in
    /// constants `pi` and `e`.
    pub fn free_variables(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_vars(&mut seen, &mut out);
        out
    }

    fn collect_vars(&self, seen: &mut BTreeSet<String>, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) | Expr::Dt(_) => {}
            Expr::Var(name) => {
                if !is_constant(name) && seen.insert(name.clone()) {
                    out.push(name.clone());
                }
            }
            Expr::Neg(e) => e.collect_vars(seen, out),
            Expr::Binary(_, a, b) => {
                a.collect_vars(seen, out);
                b.collect_vars(seen, out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect_vars(seen, out)),
        }
    }
}

pub(crate) fn is_constant(name: &str) -> bool {
    matches!(name, "pi" | "e")
}

/// Number of arguments taken by a known function, or `None` if unknown.
pub fn function_arity(name: &str) -> Option<usize> {
    match name {
        "exp" | "ln" | "sin" | "cos" | "tan" | "atan" | "sqrt" | "recip" | "abs" => Some(1),
        "pow" | "log" => Some(2),
        _ => None,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => f.write_str(&format_real(*v)),
            Expr::Dt(order) => write!(f, "dt[{order}]"),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A syntax error located at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: expected {expected}, found {found}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}
