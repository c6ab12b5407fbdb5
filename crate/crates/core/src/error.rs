use thiserror::Error;

use crate::exponent::Exponent;
use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("order must be positive, got {0}")]
    NonPositiveOrder(Exponent),

    #[error("not invertible: standard part is 0")]
    NotInvertible,

    #[error("domain error: {function} is not defined at standard part {at}")]
    Domain { function: String, at: f64 },

    #[error("length mismatch: {left} orders but {right} exponents")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty product")]
    EmptyProduct,

    #[error("order of a nonzero infinitesimal must be at least 1, got {0}")]
    OrderBelowOne(Exponent),

    #[error("product of powers is zero")]
    ProductIsZero,

    #[error("no finite order: the weighted sum {0} is not below 1")]
    NoFiniteOrder(Exponent),

    #[error("multi-index must not be the zero vector")]
    ZeroMultiIndex,

    #[error("not smooth at {at}: {reason}")]
    NotSmoothAtPoint { at: f64, reason: String },

    #[error("increment {index} is not in the ideal D_{bound}")]
    NotInIdeal { index: usize, bound: Exponent },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("function `{name}` takes {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
