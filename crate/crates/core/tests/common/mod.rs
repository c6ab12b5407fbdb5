#![allow(dead_code)]

use fermat::{Exponent, FermatReal};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Exponent {
    Exponent::ratio(n, d)
}

pub fn dt(n: i64, d: i64) -> FermatReal {
    FermatReal::dt(&q(n, d)).unwrap()
}

/// A rational order `p/q ≥ 1` with small numerator and denominator.
pub fn order(rng: &mut impl Rng) -> Exponent {
    let d = rng.gen_range(1..=4);
    let n = rng.gen_range(d..=6 * d);
    q(n, d)
}

/// Small dyadic coefficient, never zero; products stay exact.
pub fn coeff(rng: &mut impl Rng) -> f64 {
    let c = f64::from(rng.gen_range(1i32..=8)) / 4.0;
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// Nonzero infinitesimal with 1 to 4 terms.
pub fn infinitesimal(rng: &mut impl Rng) -> FermatReal {
    let n = rng.gen_range(1..=4);
    let raw: Vec<_> = (0..n).map(|_| (coeff(rng), order(rng).recip())).collect();
    let x = FermatReal::canonicalize(0.0, raw);
    if x.is_zero() {
        dt(1, 1)
    } else {
        x
    }
}

/// Standard part plus an infinitesimal part drawn from small pools, so that
/// equal standard parts and equal leading terms occur often.
pub fn value(rng: &mut impl Rng) -> FermatReal {
    let std = *[-1.0, 0.0, 0.0, 0.5, 1.0].choose(rng).unwrap();
    let n = rng.gen_range(0..=3);
    let orders = [q(1, 1), q(3, 2), q(2, 1), q(3, 1), q(4, 1)];
    let raw: Vec<_> = (0..n)
        .map(|_| (coeff(rng), orders.choose(rng).unwrap().recip()))
        .collect();
    FermatReal::canonicalize(std, raw)
}

/// Arbitrary finite double spread over many magnitudes.
pub fn wide_float(rng: &mut impl Rng) -> f64 {
    match rng.gen_range(0..6) {
        0 => 0.0,
        1 => f64::from(rng.gen_range(-100i32..=100)),
        2 => rng.gen_range(-1.0..1.0),
        _ => {
            let m: f64 = rng.gen_range(1.0..2.0);
            let e: i32 = rng.gen_range(-60..=60);
            let s = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            s * m * 2f64.powi(e)
        }
    }
}

/// Canonical value with wide coefficients and arbitrary rational orders.
pub fn canonical(rng: &mut impl Rng) -> FermatReal {
    let n = rng.gen_range(0..=5);
    let raw: Vec<_> = (0..n)
        .map(|_| {
            let d = rng.gen_range(1..=12);
            let num = rng.gen_range(d..=10 * d);
            (wide_float(rng), q(num, d).recip())
        })
        .collect();
    FermatReal::canonicalize(wide_float(rng), raw)
}
