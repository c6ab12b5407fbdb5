use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::real::FermatReal;

/// Canonical text: `<std> ± <c>*dt[<b>] ± …` with orders strictly
/// decreasing. The standard part is omitted when it is 0 and terms exist,
/// and a coefficient of magnitude 1 is elided.
pub fn format(x: &FermatReal) -> String {
    let mut out = String::new();
    let show_std = x.std() != 0.0 || x.terms().is_empty();
    if show_std {
        out.push_str(&format_real(x.std()));
    }
    for (i, term) in x.terms().iter().enumerate() {
        let c = term.coeff();
        let first = i == 0 && !show_std;
        match (first, c < 0.0) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        if magnitude != 1.0 {
            out.push_str(&format_real(magnitude));
            out.push('*');
        }
        let _ = write!(out, "dt[{}]", term.order());
    }
    out
}

/// Shortest round-trip decimal, switching to exponent notation for very
/// small or very large magnitudes.
pub fn format_real(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-6..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: f64,
    /// Exact rational, `p` or `p/q`.
    pub order: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FermatJson {
    pub std: f64,
    pub terms: Vec<TermJson>,
}

pub fn to_json(x: &FermatReal) -> FermatJson {
    FermatJson {
        std: x.std(),
        terms: x
            .terms()
            .iter()
            .map(|t| TermJson {
                coeff: t.coeff(),
                order: t.order().to_string(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;
    use crate::expr::{eval_str, Env};

    fn dt(n: i64, d: i64) -> FermatReal {
        FermatReal::dt(&Exponent::ratio(n, d)).unwrap()
    }

    #[test]
    fn decomposition_example() {
        let x = FermatReal::one() + dt(3, 1) + dt(2, 1) + dt(1, 1);
        assert_eq!(format(&x), "1 + dt[3] + dt[2] + dt[1]");
    }

    #[test]
    fn zero_and_reals() {
        assert_eq!(format(&FermatReal::zero()), "0");
        assert_eq!(format(&FermatReal::real(-2.5)), "-2.5");
        assert_eq!(format(&FermatReal::real(1e-9)), "1e-9");
    }

    #[test]
    fn rational_orders_and_signs() {
        let x = FermatReal::real(1.0) - dt(3, 2).scale(2.0);
        assert_eq!(format(&x), "1 - 2*dt[3/2]");
        assert_eq!(format(&dt(2, 1).neg()), "-dt[2]");
        assert_eq!(
            format(&(dt(2, 1).scale(-2.0) + dt(1, 1))),
            "-2*dt[2] + dt[1]"
        );
        let s = dt(3, 1) - dt(1, 1).scale(1.0 / 6.0);
        assert_eq!(format(&s), "dt[3] - 0.16666666666666666*dt[1]");
    }

    #[test]
    fn round_trips() {
        let values = [
            FermatReal::real(-0.1) + dt(21, 10).scale(3e-12) - dt(1, 1).scale(1e20),
            dt(7, 3).scale(-1.0),
            FermatReal::real(f64::MIN_POSITIVE) + dt(4, 1).scale(0.1 + 0.2),
        ];
        for x in values {
            let text = format(&x);
            assert_eq!(eval_str(&text, &Env::new()).unwrap(), x, "{text}");
        }
    }

    #[test]
    fn json_orders_are_exact_strings() {
        let x = FermatReal::real(2.0) - dt(3, 2).scale(2.0);
        let json = serde_json::to_string(&to_json(&x)).unwrap();
        assert_eq!(
            json,
            r#"{"std":2.0,"terms":[{"coeff":-2.0,"order":"3/2"}]}"#
        );
    }
}
