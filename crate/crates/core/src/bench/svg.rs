//! Log-log scatter of explored points per segment with fitted lines.

use std::fmt::Write;

use super::{BenchRow, GroupFit};

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

pub fn scatter(rows: &[BenchRow], fits: &[GroupFit]) -> String {
    let pts: Vec<(f64, f64, usize)> = rows
        .iter()
        .filter(|r| r.metrics.avg_explored() > 0.0)
        .map(|r| {
            let g = fits
                .iter()
                .position(|(f, a, _)| *f == r.family && *a == r.algo)
                .unwrap_or(COLORS.len() - 1);
            ((r.n as f64).log10(), r.metrics.avg_explored().log10(), g)
        })
        .collect();
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    if pts.is_empty() {
        svg.push_str("</svg>\n");
        return svg;
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y, _) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let pad = |lo: f64, hi: f64| {
        if hi - lo < 1e-9 {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let _ = writeln!(
        svg,
        r#"<path d="M{m} {b} H{r} M{m} {b} V{m}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">log10 N</text>"#,
        W / 2.0,
        H - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{}" font-size="12" transform="rotate(-90 14 {})" text-anchor="middle">log10 explored per segment</text>"#,
        H / 2.0,
        H / 2.0
    );
    for &(x, y, g) in &pts {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{}" fill-opacity="0.5"/>"#,
            sx(x),
            sy(y),
            COLORS[g % COLORS.len()]
        );
    }
    for (g, (f, a, fit)) in fits.iter().enumerate() {
        let color = COLORS[g % COLORS.len()];
        let line = |x: f64| fit.constant.log10() + fit.exponent * x;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="1.5"/>"#,
            sx(x0),
            sy(line(x0)),
            sx(x1),
            sy(line(x1))
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="11" fill="{color}">{f} {a}: {:.3} N^{:.3} (r={:.3})</text>"#,
            MARGIN + 8.0,
            MARGIN + 14.0 * g as f64,
            fit.constant,
            fit.exponent,
            fit.correlation
        );
    }
    svg.push_str("</svg>\n");
    svg
}
