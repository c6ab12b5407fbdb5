//! Closed-form derivative towers against power-series recurrences.
//!
//! Each oracle builds the Taylor coefficients of `f(r + h)` in `h` from
//! series arithmetic (products, inverses, integration), never from the
//! closed forms used by the library.

use fermat::ElementaryFn;

const N: usize = 64;

fn factorial_recips(n: usize) -> Vec<f64> {
    let mut out = vec![1.0; n + 1];
    for i in 1..=n {
        out[i] = out[i - 1] / i as f64;
    }
    out
}

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    (0..a.len())
        .map(|n| (0..=n).map(|k| a[k] * b[n - k]).sum())
        .collect()
}

fn inverse(a: &[f64]) -> Vec<f64> {
    let mut b = vec![0.0; a.len()];
    b[0] = 1.0 / a[0];
    for n in 1..a.len() {
        let s: f64 = (1..=n).map(|k| a[k] * b[n - k]).sum();
        b[n] = -s / a[0];
    }
    b
}

/// Antiderivative with constant term `c0`.
fn integrate(a: &[f64], c0: f64) -> Vec<f64> {
    let mut out = vec![c0];
    out.extend(
        a.iter()
            .take(a.len() - 1)
            .enumerate()
            .map(|(k, v)| v / (k + 1) as f64),
    );
    out
}

/// `r + h` as a series.
fn linear(r: f64) -> Vec<f64> {
    let mut a = vec![0.0; N + 1];
    a[0] = r;
    a[1] = 1.0;
    a
}

/// `a^c` by the classical power recurrence.
fn power(a: &[f64], c: f64) -> Vec<f64> {
    let mut b = vec![0.0; a.len()];
    b[0] = a[0].powf(c);
    for n in 1..a.len() {
        let s: f64 = (1..=n)
            .map(|k| (c * k as f64 - (n - k) as f64) * a[k] * b[n - k])
            .sum();
        b[n] = s / (n as f64 * a[0]);
    }
    b
}

fn sin_cos(r: f64) -> (Vec<f64>, Vec<f64>) {
    let inv = factorial_recips(N);
    let sin_h: Vec<f64> = (0..=N)
        .map(|i| {
            if i % 2 == 1 {
                sign(i / 2) * inv[i]
            } else {
                0.0
            }
        })
        .collect();
    let cos_h: Vec<f64> = (0..=N)
        .map(|i| {
            if i % 2 == 0 {
                sign(i / 2) * inv[i]
            } else {
                0.0
            }
        })
        .collect();
    let sin: Vec<f64> = (0..=N)
        .map(|i| r.sin() * cos_h[i] + r.cos() * sin_h[i])
        .collect();
    let cos: Vec<f64> = (0..=N)
        .map(|i| r.cos() * cos_h[i] - r.sin() * sin_h[i])
        .collect();
    (sin, cos)
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn oracle(f: ElementaryFn, r: f64) -> Vec<f64> {
    match f {
        ElementaryFn::Exp => factorial_recips(N).iter().map(|c| c * r.exp()).collect(),
        ElementaryFn::Ln => integrate(&inverse(&linear(r)), r.ln()),
        ElementaryFn::Sin => sin_cos(r).0,
        ElementaryFn::Cos => sin_cos(r).1,
        ElementaryFn::Tan => {
            let (s, c) = sin_cos(r);
            mul(&s, &inverse(&c))
        }
        ElementaryFn::Atan => {
            let x = linear(r);
            let mut one_plus_sq = mul(&x, &x);
            one_plus_sq[0] += 1.0;
            integrate(&inverse(&one_plus_sq), r.atan())
        }
        ElementaryFn::Sqrt => power(&linear(r), 0.5),
        ElementaryFn::Recip => inverse(&linear(r)),
        ElementaryFn::PowConst(c) => power(&linear(r), c),
    }
}

fn check(f: ElementaryFn, r: f64, tol: f64) {
    let got = f.taylor_coeffs(r, N);
    let want = oracle(f, r);
    assert_eq!(got.len(), N + 1);
    for i in 0..=N {
        let local = want[i].abs().max(got[i].abs());
        let err = (got[i] - want[i]).abs();
        assert!(
            err <= tol * local,
            "{f:?} at {r}: coefficient {i} is {}, series gives {}",
            got[i],
            want[i]
        );
    }
}

#[test]
fn exp_and_log() {
    check(ElementaryFn::Exp, 0.7, 1e-13);
    check(ElementaryFn::Exp, -2.0, 1e-13);
    check(ElementaryFn::Ln, 1.3, 1e-12);
    check(ElementaryFn::Ln, 0.4, 1e-12);
}

#[test]
fn trigonometric() {
    for r in [0.0, 0.9, -2.3] {
        check(ElementaryFn::Sin, r, 1e-12);
        check(ElementaryFn::Cos, r, 1e-12);
    }
    check(ElementaryFn::Tan, 0.3, 1e-9);
    check(ElementaryFn::Tan, -0.8, 1e-9);
}

#[test]
fn arctangent() {
    for r in [0.5, -1.5, 3.0] {
        check(ElementaryFn::Atan, r, 1e-9);
    }
}

#[test]
fn algebraic() {
    check(ElementaryFn::Sqrt, 2.0, 1e-11);
    check(ElementaryFn::Recip, 1.5, 1e-12);
    check(ElementaryFn::Recip, -0.7, 1e-12);
    check(ElementaryFn::PowConst(2.5), 1.7, 1e-11);
    check(ElementaryFn::PowConst(-0.5), 0.8, 1e-11);
    check(ElementaryFn::PowConst(3.0), 1.2, 1e-12);
}

#[test]
fn integer_power_tower_terminates() {
    let c = ElementaryFn::PowConst(3.0).taylor_coeffs(2.0, 10);
    assert_eq!(&c[..4], &[8.0, 12.0, 6.0, 1.0]);
    assert!(c[4..].iter().all(|&v| v == 0.0));
}

#[test]
fn derivative_is_scaled_coefficient() {
    // f⁽ⁱ⁾ = i!·cᵢ; sin⁽⁴ᵏ⁺¹⁾(0) = 1
    assert!((ElementaryFn::Sin.derivative(0.0, 5) - 1.0).abs() < 1e-12);
    assert!((ElementaryFn::Exp.derivative(1.0, 7) - 1f64.exp()).abs() < 1e-9);
}
