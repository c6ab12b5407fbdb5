//! Smooth functions with infinitesimal parameters,
//! `f(x) = Σ_{|q|≤k} a_q(x)·p^q` for parameters `p ∈ D_k^d`.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::expr::{self, Env, Expr};
use crate::order::{in_ideal, OrderValue};
use crate::real::FermatReal;
use crate::smooth::monomial;

#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoly {
    params: Vec<FermatReal>,
    k: u32,
    entries: Vec<(Vec<u32>, Expr)>,
}

impl ParamPoly {
    /// Invariants: every parameter is infinitesimal and lies in `D_k`, every
    /// multi-index has one entry per parameter and total degree at most `k`.
    pub fn new(params: Vec<FermatReal>, k: u32, entries: Vec<(Vec<u32>, Expr)>) -> Result<Self> {
        let bound = OrderValue::from(i64::from(k));
        for (index, p) in params.iter().enumerate() {
            if !p.is_infinitesimal() || !in_ideal(p, &bound) {
                return Err(Error::NotInIdeal {
                    index,
                    bound: Exponent::integer(i64::from(k)),
                });
            }
        }
        for (q, _) in &entries {
            if q.len() != params.len() {
                return Err(Error::LengthMismatch {
                    left: params.len(),
                    right: q.len(),
                });
            }
            let degree: u32 = q.iter().sum();
            if degree > k {
                return Err(Error::InvalidArgument(format!(
                    "multi-index of degree {degree} exceeds {k}"
                )));
            }
        }
        Ok(ParamPoly { params, k, entries })
    }

    pub fn params(&self) -> &[FermatReal] {
        &self.params
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn entries(&self) -> &[(Vec<u32>, Expr)] {
        &self.entries
    }
}

/// Evaluates `Σ a_q(env)·p^q`; monomials that vanish by the product-of-powers
/// criterion skip the coefficient evaluation entirely.
pub fn eval_param_poly(poly: &ParamPoly, env: &Env) -> Result<FermatReal> {
    let mut sum = FermatReal::zero();
    for (q, coeff) in &poly.entries {
        let Some(mono) = monomial(&poly.params, q)? else {
            continue;
        };
        sum = sum.add(&expr::eval(coeff, env)?.mul(&mono));
    }
    Ok(sum)
}
