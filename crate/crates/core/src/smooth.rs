//! Extension of smooth real functions to Fermat reals.
//!
//! For `x = r + h` with `h` infinitesimal, `h^{N+1} = 0` once `N = ⌊ω(h)⌋`, so
//!
//! ```text
//! f(r + h) = Σ_{i=0}^{N} f⁽ⁱ⁾(r)/i! · hⁱ
//! ```
//!
//! holds exactly, with no remainder. Each catalog function provides its
//! scaled derivatives `f⁽ⁱ⁾(r)/i!` in closed form.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::expr::{self, Expr};
use crate::order::{self, in_ideal, OrderValue};
use crate::real::FermatReal;

/// The catalog of elementary smooth functions that can be extended.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ElementaryFn {
    Exp,
    Ln,
    Sin,
    Cos,
    Tan,
    Atan,
    Sqrt,
    Recip,
    /// `r ↦ r^c` for a fixed real exponent `c`.
    PowConst(f64),
}

impl ElementaryFn {
    pub const NAMED: [ElementaryFn; 8] = [
        ElementaryFn::Exp,
        ElementaryFn::Ln,
        ElementaryFn::Sin,
        ElementaryFn::Cos,
        ElementaryFn::Tan,
        ElementaryFn::Atan,
        ElementaryFn::Sqrt,
        ElementaryFn::Recip,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ElementaryFn::Exp => "exp",
            ElementaryFn::Ln => "ln",
            ElementaryFn::Sin => "sin",
            ElementaryFn::Cos => "cos",
            ElementaryFn::Tan => "tan",
            ElementaryFn::Atan => "atan",
            ElementaryFn::Sqrt => "sqrt",
            ElementaryFn::Recip => "recip",
            ElementaryFn::PowConst(_) => "pow",
        }
    }

    pub fn from_name(name: &str) -> Option<ElementaryFn> {
        ElementaryFn::NAMED
            .iter()
            .copied()
            .find(|f| f.name() == name)
    }

    /// Whether `r` lies in the (open) domain of the function.
    pub fn in_domain(&self, r: f64) -> bool {
        if !r.is_finite() {
            return false;
        }
        match *self {
            ElementaryFn::Exp | ElementaryFn::Sin | ElementaryFn::Cos | ElementaryFn::Atan => true,
            ElementaryFn::Ln | ElementaryFn::Sqrt => r > 0.0,
            ElementaryFn::Recip => r != 0.0,
            ElementaryFn::Tan => r.cos() != 0.0,
            ElementaryFn::PowConst(c) => {
                if c.fract() != 0.0 {
                    r > 0.0
                } else if c < 0.0 {
                    r != 0.0
                } else {
                    true
                }
            }
        }
    }

    /// Value at a real point, without a domain check.
    pub fn value(&self, r: f64) -> f64 {
        match *self {
            ElementaryFn::Exp => r.exp(),
            ElementaryFn::Ln => r.ln(),
            ElementaryFn::Sin => sin(r),
            ElementaryFn::Cos => cos(r),
            ElementaryFn::Tan => r.tan(),
            ElementaryFn::Atan => r.atan(),
            ElementaryFn::Sqrt => r.sqrt(),
            ElementaryFn::Recip => 1.0 / r,
            ElementaryFn::PowConst(c) => r.powf(c),
        }
    }

    /// Scaled derivatives `f⁽ⁱ⁾(r)/i!` for `i = 0..=n`.
    pub fn taylor_coeffs(&self, r: f64, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n + 1);
        match *self {
            ElementaryFn::Exp => {
                let mut c = r.exp();
                out.push(c);
                for i in 1..=n {
                    c /= i as f64;
                    out.push(c);
                }
            }
            ElementaryFn::Ln => {
                out.push(r.ln());
                let inv = 1.0 / r;
                let mut p = 1.0;
                for i in 1..=n {
                    p *= inv;
                    let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
                    out.push(sign * p / i as f64);
                }
            }
            ElementaryFn::Sin | ElementaryFn::Cos => {
                let (s, c) = (sin(r), cos(r));
                // derivatives of sin cycle through sin, cos, −sin, −cos
                let cycle = if *self == ElementaryFn::Sin {
                    [s, c, -s, -c]
                } else {
                    [c, -s, -c, s]
                };
                let mut inv_fact = 1.0;
                for i in 0..=n {
                    if i > 0 {
                        inv_fact /= i as f64;
                    }
                    out.push(cycle[i % 4] * inv_fact);
                }
            }
            ElementaryFn::Tan => {
                // Qₙ(T) = f⁽ⁿ⁾/n! as a polynomial in T = tan r:
                // Q₀ = T, Qₙ₊₁ = Qₙ'(T)·(1 + T²)/(n + 1)
                let t = r.tan();
                let mut poly = vec![0.0, 1.0];
                out.push(t);
                for k in 0..n {
                    let deriv: Vec<f64> = poly
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(j, a)| a * j as f64)
                        .collect();
                    let mut next = vec![0.0; deriv.len() + 2];
                    for (j, a) in deriv.iter().enumerate() {
                        next[j] += a;
                        next[j + 2] += a;
                    }
                    let scale = 1.0 / (k + 1) as f64;
                    next.iter_mut().for_each(|a| *a *= scale);
                    poly = next;
                    out.push(horner(&poly, t));
                }
            }
            ElementaryFn::Atan => {
                // f⁽ⁿ⁾(r) = (n−1)!·cosⁿ(θ)·sin(n(θ + π/2)),  θ = atan r
                let theta = r.atan();
                let c = theta.cos();
                out.push(theta);
                let mut cpow = 1.0;
                for i in 1..=n {
                    cpow *= c;
                    let fi = i as f64;
                    out.push(cpow * (fi * (theta + FRAC_PI_2)).sin() / fi);
                }
            }
            ElementaryFn::Sqrt => {
                let root = r.sqrt();
                out.push(root);
                let mut binom = 1.0;
                let mut rpow = 1.0;
                for i in 1..=n {
                    binom *= (0.5 - (i - 1) as f64) / i as f64;
                    rpow *= r;
                    out.push(binom * root / rpow);
                }
            }
            ElementaryFn::Recip => {
                let inv = 1.0 / r;
                let mut c = inv;
                out.push(c);
                for _ in 1..=n {
                    c = -c * inv;
                    out.push(c);
                }
            }
            ElementaryFn::PowConst(e) => {
                out.push(r.powf(e));
                let mut binom = 1.0;
                for i in 1..=n {
                    // binom(e, i) via the falling factorial; exactly 0 past a
                    // nonnegative integer exponent
                    binom *= (e - (i - 1) as f64) / i as f64;
                    out.push(if binom == 0.0 {
                        0.0
                    } else {
                        binom * r.powf(e - i as f64)
                    });
                }
            }
        }
        out
    }

    /// The `i`-th derivative at `r` (unscaled).
    pub fn derivative(&self, r: f64, i: usize) -> f64 {
        let coeffs = self.taylor_coeffs(r, i);
        let fact: f64 = (1..=i).map(|k| k as f64).product();
        coeffs[i] * fact
    }
}

impl fmt::Display for ElementaryFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryFn::PowConst(c) => write!(f, "pow(·, {c})"),
            other => f.write_str(other.name()),
        }
    }
}

/// False for NaN as well as for nonpositive values.
fn positive(v: f64) -> bool {
    v > 0.0
}

// Kept out of line so that sin and cos of one argument are never fused into
// a single sincos call, whose last bit can differ from the separate calls.
// The real and the infinitesimal paths must agree bit for bit.
#[inline(never)]
fn sin(r: f64) -> f64 {
    r.sin()
}

#[inline(never)]
fn cos(r: f64) -> f64 {
    r.cos()
}

fn horner(poly: &[f64], x: f64) -> f64 {
    poly.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

/// `Σ_{i=0}^{N} cᵢ·hⁱ` for an infinitesimal `h`, stopping once `hⁱ` vanishes.
fn taylor_sum(coeffs: &[f64], h: &FermatReal) -> FermatReal {
    let mut sum = FermatReal::real(coeffs[0]);
    let mut power = FermatReal::one();
    for &c in &coeffs[1..] {
        power = power.mul(h);
        if power.is_zero() {
            break;
        }
        sum = sum.add(&power.scale(c));
    }
    sum
}

/// Truncation depth `⌊ω(h)⌋` of the remainder-free expansion.
fn expansion_depth(h: &FermatReal) -> usize {
    match order::order(h) {
        OrderValue::Finite(w) => usize::try_from(w.floor_u64()).unwrap_or(usize::MAX),
        _ => 0,
    }
}

/// `ext f(x)`: the extension of `f` evaluated at a Fermat real.
pub fn ext_apply(f: ElementaryFn, x: &FermatReal) -> Result<FermatReal> {
    let r = x.std();
    if !f.in_domain(r) {
        return Err(Error::Domain {
            function: f.name().to_string(),
            at: r,
        });
    }
    if x.is_real() {
        return Ok(FermatReal::real(f.value(r)));
    }
    let h = x.infinitesimal_part();
    let coeffs = f.taylor_coeffs(r, expansion_depth(&h));
    Ok(taylor_sum(&coeffs, &h))
}

/// `x^y` for `x` with positive standard part.
///
/// A standard exponent goes through the `r ↦ r^c` tower directly; otherwise
/// the infinitesimal part of `y` contributes a factor `exp((y − °y)·ln x)`.
pub fn pow(x: &FermatReal, y: &FermatReal) -> Result<FermatReal> {
    if !positive(x.std()) {
        return Err(Error::Domain {
            function: "pow".to_string(),
            at: x.std(),
        });
    }
    let standard = ext_apply(ElementaryFn::PowConst(y.std()), x)?;
    if y.is_real() {
        return Ok(standard);
    }
    // x^y = x^{°y}·exp((y − °y)·ln x); the second factor has standard part
    // exactly 1, so °(x^y) is computed as for a real exponent
    let ln_x = ext_apply(ElementaryFn::Ln, x)?;
    let rest = ext_apply(ElementaryFn::Exp, &y.infinitesimal_part().mul(&ln_x))?;
    Ok(standard.mul(&rest))
}

/// Logarithm of `y` in base `b`: `ln y / ln b`.
pub fn log(base: &FermatReal, y: &FermatReal) -> Result<FermatReal> {
    let domain = |at: f64| Error::Domain {
        function: "log".to_string(),
        at,
    };
    if !positive(base.std()) || base.std() == 1.0 {
        return Err(domain(base.std()));
    }
    if !positive(y.std()) {
        return Err(domain(y.std()));
    }
    let ln_y = ext_apply(ElementaryFn::Ln, y)?;
    let ln_b = ext_apply(ElementaryFn::Ln, base)?;
    ln_y.div(&ln_b)
}

/// Derivative of a one-variable expression at a real point by the
/// derivation formula `f(x + h) = f(x) + h·f'(x)` with `h = dt[1]`.
///
/// The expression must have at most one free variable.
pub fn derive(f: &Expr, at: f64) -> Result<f64> {
    let vars = f.free_variables();
    let var = match vars.len() {
        0 => return Ok(0.0),
        1 => vars.into_iter().next().unwrap(),
        _ => {
            return Err(Error::NotSmoothAtPoint {
                at,
                reason: format!("expected one variable, found {}", vars.join(", ")),
            })
        }
    };
    derive_in(f, &var, at, &HashMap::new())
}

/// Like [`derive()`], differentiating with respect to `var` while the other
/// variables are bound in `env`.
pub fn derive_in(f: &Expr, var: &str, at: f64, env: &HashMap<String, FermatReal>) -> Result<f64> {
    let not_smooth = |reason: String| Error::NotSmoothAtPoint { at, reason };
    let mut env = env.clone();
    let eval_at = |env: &mut HashMap<String, FermatReal>, x: FermatReal| {
        env.insert(var.to_string(), x);
        expr::eval(f, env).map_err(|e| match e {
            Error::UnboundVariable(_) => e,
            other => not_smooth(other.to_string()),
        })
    };
    let base = eval_at(&mut env, FermatReal::real(at))?;
    let dt = FermatReal::dt(&Exponent::one())?;
    let shifted = eval_at(&mut env, FermatReal::real(at).add(&dt))?;
    let increment = shifted.sub(&base);
    if increment.is_zero() {
        return Ok(0.0);
    }
    match increment.terms() {
        [term] if increment.std() == 0.0 && term.exp().is_one() => Ok(term.coeff()),
        _ => Err(not_smooth(format!(
            "increment {increment} is not a multiple of dt[1]"
        ))),
    }
}

/// All multi-indices `j ∈ ℕ^d` with `|j| ≤ n`, in graded lexicographic order.
pub fn multi_indices(d: usize, n: u32) -> Vec<Vec<u32>> {
    fn rec(d: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            rec(d, budget - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n, &mut Vec::with_capacity(d), &mut out);
    out.sort_by_key(|j| j.iter().sum::<u32>());
    out
}

/// `h^j = Π hᵢ^{jᵢ}`, or `None` when the product is zero by the
/// product-of-powers criterion (checked before any multiplication).
pub fn monomial(h: &[FermatReal], j: &[u32]) -> Result<Option<FermatReal>> {
    let mut orders = Vec::new();
    let mut exps = Vec::new();
    let mut all_infinitesimal = true;
    for (hi, &ji) in h.iter().zip(j) {
        if ji == 0 {
            continue;
        }
        if hi.is_zero() {
            return Ok(None);
        }
        if hi.std() != 0.0 {
            all_infinitesimal = false;
        } else if let OrderValue::Finite(w) = order::order(hi) {
            orders.push(w);
            exps.push(ji);
        }
    }
    if all_infinitesimal && !orders.is_empty() && order::product_power_zero(&orders, &exps)? {
        return Ok(None);
    }
    let product = h
        .iter()
        .zip(j)
        .filter(|(_, &ji)| ji > 0)
        .map(|(hi, &ji)| hi.pow_nat(u64::from(ji)))
        .product::<FermatReal>();
    Ok(if product.is_zero() {
        None
    } else {
        Some(product)
    })
}

/// Multivariate remainder-free Taylor expansion
/// `f(x + h) = Σ_{|j|≤n} h^j/j! · ∂^j f(x)` for increments `hᵢ ∈ D_n`.
///
/// `partials(x, j)` returns the mixed partial derivative `∂^j f(x)`; it is
/// only called for multi-indices whose monomial is nonzero.
pub fn taylor_multi<F>(partials: F, x: &[f64], h: &[FermatReal], n: u32) -> Result<FermatReal>
where
    F: Fn(&[f64], &[u32]) -> f64,
{
    if x.len() != h.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: h.len(),
        });
    }
    let bound = OrderValue::from(i64::from(n));
    for (index, hi) in h.iter().enumerate() {
        if !in_ideal(hi, &bound) {
            return Err(Error::NotInIdeal {
                index,
                bound: Exponent::integer(i64::from(n)),
            });
        }
    }
    let mut sum = FermatReal::zero();
    for j in multi_indices(h.len(), n) {
        let Some(mono) = monomial(h, &j)? else {
            continue;
        };
        let fact: f64 = j
            .iter()
            .map(|&ji| (1..=ji).map(f64::from).product::<f64>())
            .product();
        sum = sum.add(&mono.scale(partials(x, &j) / fact));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Exponent {
        Exponent::ratio(n, d)
    }

    fn dt(n: i64, d: i64) -> FermatReal {
        FermatReal::dt(&q(n, d)).unwrap()
    }

    #[test]
    fn sine_of_third_order_infinitesimal() {
        let h = dt(3, 1);
        let s = ext_apply(ElementaryFn::Sin, &h).unwrap();
        assert_eq!(s, &h - &dt(1, 1).scale(1.0 / 6.0));
    }

    #[test]
    fn first_order_expansions() {
        let h = dt(1, 1);
        assert_eq!(
            ext_apply(ElementaryFn::Exp, &h).unwrap(),
            FermatReal::one() + h.clone()
        );
        assert_eq!(ext_apply(ElementaryFn::Sin, &h).unwrap(), h);
        assert_eq!(ext_apply(ElementaryFn::Cos, &h).unwrap(), FermatReal::one());
    }

    #[test]
    fn recip_matches_invert() {
        let x = FermatReal::one() + dt(2, 1);
        let r = ext_apply(ElementaryFn::Recip, &x).unwrap();
        assert_eq!(r, FermatReal::one() - dt(2, 1) + dt(1, 1));
        assert_eq!(r, x.invert().unwrap());
    }

    #[test]
    fn real_arguments_give_ordinary_values() {
        for f in ElementaryFn::NAMED {
            let r = 0.7;
            assert_eq!(
                ext_apply(f, &FermatReal::real(r)).unwrap(),
                FermatReal::real(f.value(r))
            );
        }
    }

    #[test]
    fn domain_is_checked_on_standard_part() {
        let neg = FermatReal::real(-1.0) + dt(2, 1);
        assert!(matches!(
            ext_apply(ElementaryFn::Ln, &neg),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            ext_apply(ElementaryFn::Sqrt, &dt(2, 1)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            ext_apply(ElementaryFn::Recip, &dt(2, 1)),
            Err(Error::Domain { .. })
        ));
        assert!(ext_apply(ElementaryFn::PowConst(2.0), &dt(2, 1)).is_ok());
        assert!(ext_apply(
            ElementaryFn::PowConst(-1.0),
            &(FermatReal::real(-2.0) + dt(1, 1))
        )
        .is_ok());
    }

    #[test]
    fn pow_examples() {
        let x = FermatReal::real(4.0) + dt(1, 1);
        let half = FermatReal::real(0.5);
        assert_eq!(
            pow(&x, &half).unwrap(),
            FermatReal::real(2.0) + dt(1, 1).scale(0.25)
        );

        let eps = dt(1, 1);
        let y = pow(&(FermatReal::one() - eps.clone()), &FermatReal::real(-0.5)).unwrap();
        assert_eq!(y, FermatReal::one() + eps.scale(0.5));

        assert!(matches!(pow(&dt(2, 1), &half), Err(Error::Domain { .. })));
        assert!(matches!(
            pow(&FermatReal::real(-1.0), &half),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn pow_with_infinitesimal_exponent() {
        // 2^dt = exp(dt·ln 2) = 1 + ln2·dt
        let y = pow(&FermatReal::real(2.0), &dt(1, 1)).unwrap();
        assert!(y.approx_eq(&(FermatReal::one() + dt(1, 1).scale(2f64.ln())), 1e-15));
    }

    #[test]
    fn log_examples() {
        let e = FermatReal::real(std::f64::consts::E);
        let y = log(&e, &(FermatReal::one() + dt(1, 1))).unwrap();
        assert!(y.approx_eq(&dt(1, 1), 1e-15));
        assert_eq!(y.terms().len(), 1);
        assert!(log(&FermatReal::one(), &FermatReal::real(2.0)).is_err());
        assert!(log(&FermatReal::real(2.0), &dt(1, 1)).is_err());
    }

    #[test]
    fn derive_examples() {
        let sin = expr::parse("sin(t)").unwrap();
        assert_eq!(derive(&sin, 0.0).unwrap(), 1.0);
        let sq = expr::parse("t^2").unwrap();
        assert_eq!(derive(&sq, 3.0).unwrap(), 6.0);
        let newton = expr::parse("sqrt(1 - t)").unwrap();
        assert_eq!(derive(&newton, 0.0).unwrap(), -0.5);
        assert_eq!(derive(&expr::parse("42").unwrap(), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn derive_reports_non_smooth_points() {
        let ln = expr::parse("ln(t)").unwrap();
        assert!(matches!(
            derive(&ln, 0.0),
            Err(Error::NotSmoothAtPoint { .. })
        ));
        let recip = expr::parse("1/t").unwrap();
        assert!(matches!(
            derive(&recip, 0.0),
            Err(Error::NotSmoothAtPoint { .. })
        ));
        // a non-standard function still has a derivative
        let shifted = expr::parse("t + dt[2]").unwrap();
        assert_eq!(derive(&shifted, 0.0).unwrap(), 1.0);
        let two = expr::parse("x*y").unwrap();
        assert!(matches!(
            derive(&two, 0.0),
            Err(Error::NotSmoothAtPoint { .. })
        ));
    }

    #[test]
    fn multi_indices_are_graded() {
        let js = multi_indices(2, 2);
        assert_eq!(js.len(), 6);
        assert_eq!(js[0], vec![0, 0]);
        assert!(js
            .windows(2)
            .all(|w| w[0].iter().sum::<u32>() <= w[1].iter().sum::<u32>()));
    }

    fn uv_partials(_: &[f64], j: &[u32]) -> f64 {
        // f(u, v) = u·v at the origin
        if j == [1, 1] {
            1.0
        } else {
            0.0
        }
    }

    #[test]
    fn taylor_multi_examples() {
        let zero = [0.0, 0.0];
        let first = taylor_multi(uv_partials, &zero, &[dt(1, 1), dt(1, 1)], 1).unwrap();
        assert!(first.is_zero());
        // dt[4] lies in D_4 but not in D_2
        let h = [dt(4, 1), dt(2, 1)];
        assert!(matches!(
            taylor_multi(uv_partials, &zero, &h, 2),
            Err(Error::NotInIdeal { index: 0, .. })
        ));
        let mixed = taylor_multi(uv_partials, &zero, &h, 4).unwrap();
        assert_eq!(mixed, dt(4, 3));
    }

    #[test]
    fn taylor_multi_checks_ideal() {
        let err = taylor_multi(uv_partials, &[0.0, 0.0], &[dt(1, 1), dt(3, 1)], 1).unwrap_err();
        assert!(matches!(err, Error::NotInIdeal { index: 1, .. }));
    }

    #[test]
    fn monomial_prunes_before_multiplying() {
        assert_eq!(monomial(&[dt(1, 1), dt(1, 1)], &[1, 1]).unwrap(), None);
        assert_eq!(
            monomial(&[dt(2, 1), dt(4, 1)], &[1, 2]).unwrap(),
            Some(dt(1, 1))
        );
        assert_eq!(
            monomial(&[dt(2, 1)], &[0]).unwrap(),
            Some(FermatReal::one())
        );
    }
}
