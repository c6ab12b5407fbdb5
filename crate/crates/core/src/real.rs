//! Canonical representation of Fermat reals and their ring operations.
//!
//! A value is stored as its decomposition
//!
//! ```text
//! x = std + c₁·t^{a₁} + c₂·t^{a₂} + … + c_k·t^{a_k},   0 < a₁ < a₂ < … < a_k ≤ 1
//! ```
//!
//! where each `t^{a}` is the infinitesimal `dt[1/a]`. Any power of `t`
//! strictly above 1 is a little-oh of `t` and therefore equal to zero, which
//! is what makes every infinitesimal nilpotent and every product finite.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::order::OrderValue;

/// One infinitesimal addend `coeff · t^exp` of a decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    coeff: f64,
    exp: Exponent,
}

impl Term {
    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    /// Potential exponent `a` in `(0, 1]`.
    pub fn exp(&self) -> &Exponent {
        &self.exp
    }

    /// Order `1/a` of the infinitesimal `t^a`.
    pub fn order(&self) -> Exponent {
        self.exp.recip()
    }
}

/// A Fermat real in canonical (decomposed) form.
///
/// Two values are equal exactly when their standard parts and term lists are
/// identical; canonical forms are unique.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FermatReal {
    std: f64,
    terms: Vec<Term>,
}

impl FermatReal {
    pub fn zero() -> Self {
        FermatReal::default()
    }

    pub fn one() -> Self {
        FermatReal::real(1.0)
    }

    pub fn real(r: f64) -> Self {
        FermatReal {
            std: normalize_zero(r),
            terms: Vec::new(),
        }
    }

    /// Builds the canonical form of `std + Σ coeff·t^exp`.
    ///
    /// Terms with `exp > 1` vanish, terms with `exp == 0` fold into the
    /// standard part, equal exponents merge and zero coefficients disappear.
    ///
    /// Panics if an exponent is negative.
    pub fn canonicalize<I>(std: f64, raw: I) -> Self
    where
        I: IntoIterator<Item = (f64, Exponent)>,
    {
        let one = Exponent::one();
        let mut std = std;
        let mut merged: BTreeMap<Exponent, f64> = BTreeMap::new();
        for (coeff, exp) in raw {
            assert!(!exp.is_negative(), "negative exponent {exp}");
            if exp.is_zero() {
                std += coeff;
            } else if exp <= one {
                *merged.entry(exp).or_insert(0.0) += coeff;
            }
        }
        FermatReal {
            std: normalize_zero(std),
            terms: merged
                .into_iter()
                .filter(|(_, c)| *c != 0.0)
                .map(|(exp, coeff)| Term { coeff, exp })
                .collect(),
        }
    }

    /// The infinitesimal `dt[order]` (that is `t^{1/order}`); zero when the
    /// order is below 1.
    pub fn dt(order: &Exponent) -> Result<Self> {
        if !order.is_positive() {
            return Err(Error::NonPositiveOrder(order.clone()));
        }
        if *order < 1 {
            return Ok(FermatReal::zero());
        }
        Ok(FermatReal {
            std: 0.0,
            terms: vec![Term {
                coeff: 1.0,
                exp: order.recip(),
            }],
        })
    }

    /// `coeff · dt[order]`, for building test values tersely.
    pub fn dt_scaled(coeff: f64, order: &Exponent) -> Result<Self> {
        Ok(FermatReal::dt(order)?.scale(coeff))
    }

    /// The standard part `°x`, i.e. the value of the representative at `t = 0`.
    pub fn std(&self) -> f64 {
        self.std
    }

    pub fn standard_part(&self) -> f64 {
        self.std
    }

    /// Infinitesimal addends in increasing potential exponent (decreasing order).
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.std == 0.0 && self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.std == 0.0
    }

    /// `x − °x`.
    pub fn infinitesimal_part(&self) -> FermatReal {
        FermatReal {
            std: 0.0,
            terms: self.terms.clone(),
        }
    }

    /// The `i`-th differential `dⁱx = °xᵢ·dt[ωᵢ]` (1-based); zero if absent.
    pub fn differential(&self, i: usize) -> FermatReal {
        match i.checked_sub(1).and_then(|k| self.terms.get(k)) {
            Some(term) => FermatReal {
                std: 0.0,
                terms: vec![term.clone()],
            },
            None => FermatReal::zero(),
        }
    }

    pub fn scale(&self, factor: f64) -> FermatReal {
        FermatReal::canonicalize(
            self.std * factor,
            self.terms.iter().map(|t| (t.coeff * factor, t.exp.clone())),
        )
    }

    pub fn add(&self, other: &FermatReal) -> FermatReal {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.exp.cmp(&b.exp) {
                std::cmp::Ordering::Less => {
                    terms.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let coeff = a.coeff + b.coeff;
                    if coeff != 0.0 {
                        terms.push(Term {
                            coeff,
                            exp: a.exp.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        FermatReal {
            std: normalize_zero(self.std + other.std),
            terms,
        }
    }

    pub fn neg(&self) -> FermatReal {
        FermatReal {
            std: normalize_zero(-self.std),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -t.coeff,
                    exp: t.exp.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &FermatReal) -> FermatReal {
        self.add(&other.neg())
    }

    /// Product; exponents of cross terms add and anything beyond `t¹` is dropped.
    pub fn mul(&self, other: &FermatReal) -> FermatReal {
        let one = Exponent::one();
        let mut raw = Vec::with_capacity(
            self.terms.len() + other.terms.len() + self.terms.len() * other.terms.len(),
        );
        if self.std != 0.0 {
            raw.extend(
                other
                    .terms
                    .iter()
                    .map(|t| (self.std * t.coeff, t.exp.clone())),
            );
        }
        if other.std != 0.0 {
            raw.extend(
                self.terms
                    .iter()
                    .map(|t| (t.coeff * other.std, t.exp.clone())),
            );
        }
        for a in &self.terms {
            for b in &other.terms {
                let exp = &a.exp + &b.exp;
                if exp > one {
                    // terms are sorted, so every later b gives an even larger sum
                    break;
                }
                raw.push((a.coeff * b.coeff, exp));
            }
        }
        FermatReal::canonicalize(self.std * other.std, raw)
    }

    /// `xⁿ` by repeated squaring; `x⁰ = 1`.
    pub fn pow_nat(&self, n: u64) -> FermatReal {
        let mut result = FermatReal::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = FermatReal::mul(&base, &base);
                if base.is_zero() {
                    return base;
                }
            }
        }
        result
    }

    /// Multiplicative inverse via the finite geometric series
    /// `1/x = (1/°x)·Σ_{j=0}^{J} (−h/°x)^j`, `h = x − °x`, `J = ⌊ω(h)⌋`.
    pub fn invert(&self) -> Result<FermatReal> {
        if self.std == 0.0 {
            return Err(Error::NotInvertible);
        }
        let s = self.std;
        if self.is_real() {
            return Ok(FermatReal::real(1.0 / s));
        }
        // ratio = −h/°x
        let ratio = FermatReal::canonicalize(
            0.0,
            self.terms.iter().map(|t| (-(t.coeff / s), t.exp.clone())),
        );
        let depth = self.terms[0].order().floor_u64();
        let mut sum = FermatReal::one();
        let mut power = FermatReal::one();
        for _ in 0..depth {
            power = power.mul(&ratio);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        Ok(sum.scale(1.0 / s))
    }

    /// `x / y`, failing when `y` is not invertible.
    pub fn div(&self, other: &FermatReal) -> Result<FermatReal> {
        Ok(self.mul(&other.invert()?))
    }

    /// `ι_k x`: keeps the standard part and the terms whose order is strictly
    /// greater than `k`.
    pub fn iota(&self, k: &OrderValue) -> FermatReal {
        let keep: Box<dyn Fn(&Term) -> bool> = match k {
            OrderValue::Zero => Box::new(|_| true),
            OrderValue::Infinity => Box::new(|_| false),
            OrderValue::Finite(k) => {
                // ω = 1/a > k  ⟺  a < 1/k
                let bound = k.recip();
                Box::new(move |t: &Term| t.exp < bound)
            }
        };
        FermatReal {
            std: self.std,
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    /// `x =_k y`, equality up to infinitesimals of order `≤ k`.
    pub fn eq_up_to(&self, other: &FermatReal, k: &OrderValue) -> bool {
        self.iota(k) == other.iota(k)
    }

    /// Approximate equality for values produced by floating point pipelines:
    /// every coefficient of `self − other` (standard part included) must be
    /// within `tol · (1 + max |coeff|)` of zero.
    pub fn approx_eq(&self, other: &FermatReal, tol: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()));
        if !close(self.std, other.std) {
            return false;
        }
        let lookup = |x: &FermatReal, exp: &Exponent| {
            x.terms
                .binary_search_by(|t| t.exp.cmp(exp))
                .map(|i| x.terms[i].coeff)
                .unwrap_or(0.0)
        };
        self.terms
            .iter()
            .all(|t| close(t.coeff, lookup(other, &t.exp)))
            && other
                .terms
                .iter()
                .all(|t| close(lookup(self, &t.exp), t.coeff))
    }

    /// Value of the representative `t ↦ °x + Σ cᵢ·t^{aᵢ}` at a real `t ≥ 0`.
    pub fn representative_at(&self, t: f64) -> f64 {
        self.terms.iter().fold(self.std, |acc, term| {
            acc + term.coeff * t.powf(term.exp.to_f64())
        })
    }
}

fn normalize_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl From<f64> for FermatReal {
    fn from(r: f64) -> Self {
        FermatReal::real(r)
    }
}

impl fmt::Display for FermatReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format(self))
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident) => {
        impl $tr for FermatReal {
            type Output = FermatReal;
            fn $method(self, rhs: FermatReal) -> FermatReal {
                FermatReal::$method(&self, &rhs)
            }
        }

        impl<'a> $tr<&'a FermatReal> for &'a FermatReal {
            type Output = FermatReal;
            fn $method(self, rhs: &'a FermatReal) -> FermatReal {
                FermatReal::$method(self, rhs)
            }
        }

        impl $tr<&FermatReal> for FermatReal {
            type Output = FermatReal;
            fn $method(self, rhs: &FermatReal) -> FermatReal {
                FermatReal::$method(&self, rhs)
            }
        }

        impl $tr<FermatReal> for &FermatReal {
            type Output = FermatReal;
            fn $method(self, rhs: FermatReal) -> FermatReal {
                FermatReal::$method(self, &rhs)
            }
        }

        impl $tr<f64> for FermatReal {
            type Output = FermatReal;
            fn $method(self, rhs: f64) -> FermatReal {
                FermatReal::$method(&self, &FermatReal::real(rhs))
            }
        }
    };
}

forward_op!(Add, add);
forward_op!(Sub, sub);
forward_op!(Mul, mul);

impl Neg for FermatReal {
    type Output = FermatReal;
    fn neg(self) -> FermatReal {
        FermatReal::neg(&self)
    }
}

impl Neg for &FermatReal {
    type Output = FermatReal;
    fn neg(self) -> FermatReal {
        FermatReal::neg(self)
    }
}

impl std::iter::Sum for FermatReal {
    fn sum<I: Iterator<Item = FermatReal>>(iter: I) -> Self {
        iter.fold(FermatReal::zero(), |acc, x| acc.add(&x))
    }
}

impl std::iter::Product for FermatReal {
    fn product<I: Iterator<Item = FermatReal>>(iter: I) -> Self {
        iter.fold(FermatReal::one(), |acc, x| acc.mul(&x))
    }
}
