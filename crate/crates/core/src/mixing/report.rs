//! Deterministic serializations: series as CSV, reports as JSON, plots as SVG.

use std::fmt::Write as _;

use serde::Serialize;

use super::bound::{BoundReport, TheoremBound, CORRELATION_FLOOR};
use super::correlation::CorrelationSeries;
use crate::error::Result;

pub const SCHEMA: &str = "v1";

/// Columns `n,value,abs_error,method`; floats use the shortest round-trip form.
pub fn series_csv(series: &[&CorrelationSeries]) -> String {
    let mut out = String::from("n,value,abs_error,method\n");
    for s in series {
        for e in &s.entries {
            let _ = writeln!(out, "{},{:?},{:?},{}", e.n, e.value, e.abs_error, e.method.as_str());
        }
    }
    out
}

/// Pretty JSON with a leading `"schema"` field and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    #[derive(Serialize)]
    struct Versioned<'a, T> {
        schema: &'static str,
        #[serde(flatten)]
        body: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Versioned {
        schema: SCHEMA,
        body: value,
    })?;
    s.push('\n');
    Ok(s)
}

pub fn bound_json(report: &BoundReport) -> Result<String> {
    to_json(report)
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

/// `log₁₀ |C_n|` against `n` for each series, with the fitted bound
/// `A · scale · base^{−n}` as a line. Entries below the floor are omitted.
pub fn correlation_svg(series: &[&CorrelationSeries], bound: &TheoremBound, report: &BoundReport) -> String {
    let n_max = report.n_max.max(1) as f64;
    let line: Vec<(f64, f64)> = (0..=report.n_max)
        .map(|n| (n as f64, bound.at(report.fitted_a, n)))
        .filter(|(_, y)| *y > 0.0 && y.is_finite())
        .map(|(x, y)| (x, y.log10()))
        .collect();
    let points: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| {
            s.entries
                .iter()
                .filter(|e| e.value.abs() > CORRELATION_FLOOR)
                .map(|e| (e.n as f64, e.value.abs().log10()))
                .collect()
        })
        .collect();
    let ys = line.iter().chain(points.iter().flatten()).map(|p| p.1);
    let (mut lo, mut hi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), y| (l.min(y), h.max(y)));
    if !lo.is_finite() {
        (lo, hi) = (-1.0, 0.0);
    }
    lo = lo.floor().max(-16.0);
    hi = hi.ceil().max(lo + 1.0);
    let px = |x: f64| MARGIN + x / n_max * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y.max(lo) - lo) / (hi - lo) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, x1, y0, y1) = (px(0.0), px(n_max), py(lo), py(hi));
    let _ = writeln!(
        svg,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" stroke="black" fill="none"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">n</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{:.2}" font-size="12" transform="rotate(-90 15 {:.2})" text-anchor="middle">log10 |C_n|</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    for (y, label) in [(lo, lo), (hi, hi)] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="end">{label}</text>"#,
            x0 - 4.0,
            py(y) + 3.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{x1:.2}" y="{:.2}" font-size="10" text-anchor="middle">{}</text>"#,
        y0 + 14.0,
        report.n_max
    );
    if !line.is_empty() {
        let d: Vec<String> = line
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" stroke="crimson" fill="none"/>"#,
            d.join(" ")
        );
    }
    let colors = ["steelblue", "darkorange", "seagreen"];
    for (i, pts) in points.iter().enumerate() {
        let color = colors[i % colors.len()];
        for &(x, y) in pts {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                px(x),
                py(y)
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}
