//! Orders of infinitesimals, the ideals `D_a`, nilpotency decisions and the
//! total order on Fermat reals.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::real::FermatReal;

/// The order `ω(x)` of a Fermat real, also used as the subscript of `D_a` and
/// the cutoff of `ι_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderValue {
    /// Standard reals have order zero.
    Zero,
    Finite(Exponent),
    Infinity,
}

impl OrderValue {
    /// Maps an exponent to an order value; `0` becomes [`OrderValue::Zero`].
    pub fn finite(e: Exponent) -> Self {
        if e.is_zero() {
            OrderValue::Zero
        } else {
            OrderValue::Finite(e)
        }
    }

    pub fn as_exponent(&self) -> Option<Exponent> {
        match self {
            OrderValue::Zero => Some(Exponent::zero()),
            OrderValue::Finite(e) => Some(e.clone()),
            OrderValue::Infinity => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, OrderValue::Zero)
    }
}

impl From<Exponent> for OrderValue {
    fn from(e: Exponent) -> Self {
        OrderValue::finite(e)
    }
}

impl From<i64> for OrderValue {
    fn from(n: i64) -> Self {
        OrderValue::finite(Exponent::integer(n))
    }
}

impl PartialOrd for OrderValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.as_exponent(), other.as_exponent()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Zero => f.write_str("0"),
            OrderValue::Finite(e) => write!(f, "{e}"),
            OrderValue::Infinity => f.write_str("inf"),
        }
    }
}

/// Outcome of comparing two Fermat reals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Lt,
    Eq,
    Gt,
}

impl Verdict {
    pub fn reverse(self) -> Verdict {
        match self {
            Verdict::Lt => Verdict::Gt,
            Verdict::Eq => Verdict::Eq,
            Verdict::Gt => Verdict::Lt,
        }
    }
}

impl From<Verdict> for Ordering {
    fn from(v: Verdict) -> Ordering {
        match v {
            Verdict::Lt => Ordering::Less,
            Verdict::Eq => Ordering::Equal,
            Verdict::Gt => Ordering::Greater,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Lt => "LT",
            Verdict::Eq => "EQ",
            Verdict::Gt => "GT",
        })
    }
}

/// `ω(x)`: 0 for standard reals, otherwise the largest order in the
/// decomposition (the reciprocal of the first potential exponent).
pub fn order(x: &FermatReal) -> OrderValue {
    match x.terms().first() {
        None => OrderValue::Zero,
        Some(t) => OrderValue::Finite(t.order()),
    }
}

/// Membership in `D_a = { x : °x = 0, ω(x) < a + 1 }`. `D_∞` is the set of all
/// infinitesimals.
pub fn in_ideal(x: &FermatReal, a: &OrderValue) -> bool {
    if x.std() != 0.0 {
        return false;
    }
    match a.as_exponent() {
        None => true,
        Some(a) => {
            let bound = OrderValue::finite(&a + &Exponent::one());
            order(x) < bound
        }
    }
}

/// Smallest `k ≥ 1` with `x^k = 0`, or `None` when `x` is not nilpotent.
pub fn nilpotency_index(x: &FermatReal) -> Option<u64> {
    if x.is_zero() {
        return Some(1);
    }
    if x.std() != 0.0 {
        return None;
    }
    match order(x) {
        OrderValue::Finite(w) => Some(w.floor_u64().saturating_add(1)),
        // a nonzero infinitesimal always has a finite order
        _ => None,
    }
}

/// `Σ i_k/ω_k` for a product `h₁^{i₁}⋯h_n^{i_n}` of nonzero infinitesimals.
fn weighted_sum(orders: &[Exponent], exps: &[u32]) -> Result<Exponent> {
    if orders.len() != exps.len() {
        return Err(Error::LengthMismatch {
            left: orders.len(),
            right: exps.len(),
        });
    }
    if orders.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let mut sum = Exponent::zero();
    for (w, &i) in orders.iter().zip(exps) {
        if *w < 1 {
            return Err(Error::OrderBelowOne(w.clone()));
        }
        sum = &sum + &w.recip().scale(u64::from(i));
    }
    Ok(sum)
}

/// Whether `h₁^{i₁}⋯h_n^{i_n} = 0` for nonzero infinitesimals of the given
/// orders: exactly when `Σ i_k/ω(h_k) > 1`.
pub fn product_power_zero(orders: &[Exponent], exps: &[u32]) -> Result<bool> {
    Ok(weighted_sum(orders, exps)? > 1)
}

/// Order of a nonzero product of powers: `(Σ i_k/ω(h_k))⁻¹`.
///
/// An all-zero exponent vector gives the empty product 1, whose order is 0.
pub fn product_power_order(orders: &[Exponent], exps: &[u32]) -> Result<OrderValue> {
    let sum = weighted_sum(orders, exps)?;
    if sum > 1 {
        return Err(Error::ProductIsZero);
    }
    if sum.is_zero() {
        return Ok(OrderValue::Zero);
    }
    Ok(OrderValue::Finite(sum.recip()))
}

/// Whether the product of powers lies in `D_p ∖ {0}`:
/// `1/(p+1) < Σ i_k/ω(h_k) ≤ 1`.
pub fn ideal_of_product(orders: &[Exponent], exps: &[u32], p: &Exponent) -> Result<bool> {
    let sum = weighted_sum(orders, exps)?;
    let lower = (p + &Exponent::one()).recip();
    Ok(lower < sum && sum <= Exponent::one())
}

/// Solves `1/k + Σ jᵢ/(αᵢ+1) = 1` for `k`.
pub fn cancellation_order(j: &[u32], alpha: &[Exponent]) -> Result<Exponent> {
    if j.len() != alpha.len() {
        return Err(Error::LengthMismatch {
            left: alpha.len(),
            right: j.len(),
        });
    }
    if j.iter().all(|&ji| ji == 0) {
        return Err(Error::ZeroMultiIndex);
    }
    let mut sum = Exponent::zero();
    for (&ji, a) in j.iter().zip(alpha) {
        if !a.is_positive() {
            return Err(Error::NonPositiveOrder(a.clone()));
        }
        sum = &sum + &(a + &Exponent::one()).recip().scale(u64::from(ji));
    }
    if sum >= 1 {
        return Err(Error::NoFiniteOrder(sum));
    }
    Ok((&Exponent::one() - &sum).recip())
}

/// Total order: the sign of the leading coefficient of `x − y`, looking at
/// the standard part first and then at the term of largest order.
pub fn compare(x: &FermatReal, y: &FermatReal) -> Verdict {
    let d = x.sub(y);
    let lead = if d.std() != 0.0 {
        d.std()
    } else {
        match d.terms().first() {
            Some(t) => t.coeff(),
            None => return Verdict::Eq,
        }
    };
    if lead > 0.0 {
        Verdict::Gt
    } else {
        Verdict::Lt
    }
}

pub fn abs(x: &FermatReal) -> FermatReal {
    if compare(x, &FermatReal::zero()) == Verdict::Lt {
        x.neg()
    } else {
        x.clone()
    }
}

impl PartialOrd for FermatReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(compare(self, other).into())
    }
}

impl FermatReal {
    pub fn order(&self) -> OrderValue {
        order(self)
    }

    pub fn abs(&self) -> FermatReal {
        abs(self)
    }

    pub fn compare(&self, other: &FermatReal) -> Verdict {
        compare(self, other)
    }
}
