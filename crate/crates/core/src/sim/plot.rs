//! Minimal SVG line plots, one series per leg.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

pub struct Series<'a> {
    pub label: &'a str,
    pub values: Vec<f64>,
}

/// Renders `series` against `t` on a time axis spanning `[0, duration]`.
pub fn render_svg(title: &str, y_label: &str, t: &[f64], duration: f64, series: &[Series<'_>]) -> String {
    let (mut lo, mut hi) = series.iter().flat_map(|s| s.values.iter().copied()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() || !hi.is_finite() {
        (lo, hi) = (0.0, 0.0);
    }
    if hi - lo < 1e-12 {
        lo -= 1.0;
        hi += 1.0;
    }
    let sx = |v: f64| MARGIN + (W - 2.0 * MARGIN) * v / duration;
    let sy = |v: f64| H - MARGIN - (H - 2.0 * MARGIN) * (v - lo) / (hi - lo);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" data-t-min="0" data-t-max="{duration}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{title}</text>"#, W / 2.0);
    let (x0, x1, y0, y1) = (sx(0.0), sx(duration), H - MARGIN, MARGIN);
    let _ = writeln!(s, r#"<path d="M{x0:.2} {y1:.2} V{y0:.2} H{x1:.2}" stroke="black" fill="none"/>"#);
    if lo < 0.0 && hi > 0.0 {
        let z = sy(0.0);
        let _ = writeln!(s, r##"<line x1="{x0:.2}" y1="{z:.2}" x2="{x1:.2}" y2="{z:.2}" stroke="#999" stroke-dasharray="4 4"/>"##);
    }
    for (v, anchor) in [(0.0, "start"), (duration, "end")] {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}" font-family="sans-serif" font-size="12">{v}</text>"#, sx(v), y0 + 16.0);
    }
    for v in [lo, hi] {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{v:.4}</text>"#, x0 - 4.0, sy(v) + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="12">t [s]</text>"#, W / 2.0, H - 12.0);
    let _ = writeln!(s, r#"<text x="14" y="{:.2}" transform="rotate(-90 14 {:.2})" text-anchor="middle" font-family="sans-serif" font-size="12">{y_label}</text>"#, H / 2.0, H / 2.0);
    for (i, ser) in series.iter().enumerate() {
        let pts: Vec<String> = t.iter().zip(&ser.values).map(|(t, v)| format!("{:.2},{:.2}", sx(*t), sy(*v))).collect();
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(s, r#"<polyline class="series" data-label="{}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, ser.label, pts.join(" "));
        let ly = MARGIN + 16.0 * i as f64;
        let _ = writeln!(s, r#"<text x="{:.2}" y="{ly:.2}" fill="{color}" font-family="sans-serif" font-size="12">{}</text>"#, W - MARGIN - 40.0, ser.label);
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(path: &Path, svg: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
