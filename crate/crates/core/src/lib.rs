//! Fermat reals: a ring extending the real numbers with nilpotent
//! infinitesimals of every rational order at least 1.
//!
//! Values are kept in canonical form, `°x + Σ cᵢ·dt[bᵢ]` with strictly
//! decreasing orders, so equality is structural. Smooth functions extend to
//! this ring by finite Taylor sums with no remainder, which makes
//! `f(x + h) = f(x) + h·f'(x)` an exact identity for `h² = 0`.
//!
//! ```
//! use fermat::{eval_str, format, Env};
//!
//! let x = eval_str("(1 + dt[2])^-1", &Env::new()).unwrap();
//! assert_eq!(format(&x), "1 - dt[2] + dt[1]");
//! ```

pub mod batch;
pub mod cli;
pub mod error;
pub mod exponent;
pub mod expr;
pub mod graph;
pub mod order;
pub mod param;
pub mod real;
pub mod smooth;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use expr::{eval, eval_str, format, parse, Env, Expr, ParseError};
pub use order::{compare, OrderValue, Verdict};
pub use real::{FermatReal, Term};
pub use smooth::ElementaryFn;
