//! Planar picture of a Fermat real: the curve
//! `{(°x + Σ cᵢ·t^{aᵢ}, t) : 0 ≤ t < δ}` with the value on the horizontal
//! axis and `t` on the vertical one.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::real::FermatReal;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

#[derive(Clone, Debug, PartialEq)]
pub struct GraphSample {
    pub delta: f64,
    /// `(value, t)` pairs, `t` strictly increasing from 0.
    pub points: Vec<(f64, f64)>,
}

/// Samples `t_i = δ·i/n` for `i < n`, so every `t` lies in `[0, δ)`.
pub fn sample(x: &FermatReal, delta: f64, samples: usize) -> Result<GraphSample> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "delta must be positive and finite, got {delta}"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "at least 2 samples are needed, got {samples}"
        )));
    }
    let n = samples as f64;
    let points = (0..samples)
        .map(|i| {
            let t = delta * i as f64 / n;
            (x.representative_at(t), t)
        })
        .collect::<Vec<_>>();
    if points.iter().any(|(v, _)| !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "curve leaves the finite floating point range".to_string(),
        ));
    }
    Ok(GraphSample { delta, points })
}

impl GraphSample {
    /// CSV with header `value,t` and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,t\n");
        for (v, t) in &self.points {
            let _ = writeln!(out, "{v},{t}");
        }
        out
    }

    /// Horizontal extent of the plot; a constant curve gets a unit window.
    fn value_range(&self) -> (f64, f64) {
        let lo = self
            .points
            .iter()
            .map(|p| p.0)
            .fold(f64::INFINITY, f64::min);
        let hi = self
            .points
            .iter()
            .map(|p| p.0)
            .fold(f64::NEG_INFINITY, f64::max);
        let span = hi - lo;
        if span > 0.0 {
            (lo - 0.05 * span, hi + 0.05 * span)
        } else {
            (lo - 1.0, hi + 1.0)
        }
    }

    /// Standalone SVG 1.1 document. Output depends only on the samples, so
    /// equal inputs give byte-identical files.
    pub fn to_svg(&self) -> String {
        let (lo, hi) = self.value_range();
        let px = |v: f64| MARGIN + (v - lo) / (hi - lo) * (WIDTH - 2.0 * MARGIN);
        let py = |t: f64| HEIGHT - MARGIN - t / self.delta * (HEIGHT - 2.0 * MARGIN);
        let base = py(0.0);
        let top = py(self.delta);

        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(
            out,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        // the real axis, t = 0
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{base:.3}" x2="{:.3}" y2="{base:.3}" stroke="black" stroke-width="1"/>"#,
            MARGIN / 2.0,
            WIDTH - MARGIN / 2.0
        );
        // t axis at the left edge of the window
        let _ = writeln!(
            out,
            r#"<line x1="{MARGIN:.3}" y1="{base:.3}" x2="{MARGIN:.3}" y2="{top:.3}" stroke="gray" stroke-width="1" stroke-dasharray="4 3"/>"#
        );
        let _ = write!(
            out,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points=""#
        );
        for (i, (v, t)) in self.points.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:.3},{:.3}", px(*v), py(*t));
        }
        let _ = writeln!(out, r#""/>"#);
        let label = |out: &mut String, x: f64, y: f64, anchor: &str, text: String| {
            let _ = writeln!(
                out,
                r#"<text x="{x:.3}" y="{y:.3}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{text}</text>"#
            );
        };
        label(&mut out, MARGIN, base + 18.0, "start", format!("{lo:.3}"));
        label(
            &mut out,
            WIDTH - MARGIN,
            base + 18.0,
            "end",
            format!("{hi:.3}"),
        );
        label(
            &mut out,
            MARGIN - 6.0,
            top + 4.0,
            "end",
            format!("t={:.3}", self.delta),
        );
        label(&mut out, MARGIN - 6.0, base + 4.0, "end", "t=0".to_string());
        out.push_str("</svg>\n");
        out
    }
}
