//! Static SVG line chart of mean evaluations against `n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::config::{AlgorithmKind, ProblemKind};
use super::stats::SummaryRow;
use crate::error::Result;
use crate::nsga2::Selection;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SeriesKey {
    algo: AlgorithmKind,
    problem: ProblemKind,
    k: usize,
    pc_bits: u64,
    selection: Option<Selection>,
    diversity: bool,
}

impl SeriesKey {
    fn label(&self) -> String {
        let mut label = format!("{} on {}", self.algo.label(), self.problem.as_str());
        if let Some(sel) = self.selection {
            let _ = write!(label, " ({sel})");
        }
        let _ = write!(label, ", diversity {}", if self.diversity { "on" } else { "off" });
        label
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// SVG document with one polyline per configuration (everything but `n` and
/// `μ`), on a log-scale y-axis. Rows without a mean are skipped.
pub fn render_svg(rows: &[SummaryRow]) -> String {
    let mut series: BTreeMap<SeriesKey, Vec<(f64, f64)>> = BTreeMap::new();
    for row in rows {
        let key = SeriesKey {
            algo: row.key.algo,
            problem: row.key.problem,
            k: row.key.k,
            pc_bits: row.key.pc_bits,
            selection: row.key.selection,
            diversity: row.key.diversity,
        };
        let points = series.entry(key).or_default();
        if let Some(mean) = row.mean.filter(|m| *m > 0.0) {
            points.push((row.key.n as f64, mean.log10()));
        }
    }

    let all: Vec<(f64, f64)> = series.values().flatten().copied().collect();
    let (mut x_lo, mut x_hi) =
        all.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.0), hi.max(p.0)));
    let (mut y_lo, mut y_hi) =
        all.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.1), hi.max(p.1)));
    if all.is_empty() {
        (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
    }
    if x_hi - x_lo < 1e-9 {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    y_lo = y_lo.floor();
    y_hi = y_hi.ceil();
    if y_hi - y_lo < 1.0 {
        y_hi = y_lo + 1.0;
    }

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ =
        writeln!(svg, r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#);

    for decade in (y_lo as i64)..=(y_hi as i64) {
        let y = sy(decade as f64);
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{decade}</text>"##,
            WIDTH - RIGHT,
            LEFT - 6.0,
            y + 4.0
        );
    }
    let mut xs: Vec<f64> = all.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    for x in xs {
        let _ =
            writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x}</text>"#, sx(x), TOP + plot_h + 18.0);
    }
    let _ =
        writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">n</text>"#, LEFT + plot_w / 2.0, HEIGHT - 18.0);
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">mean fitness evaluations</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (idx, (key, points)) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let dash = if key.diversity { "" } else { r#" stroke-dasharray="6 3""# };
        let path: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"{dash}/>"#,
            path.join(" ")
        );
        for &(x, y) in points {
            let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, sx(x), sy(y));
        }
        let ly = TOP + 16.0 + 16.0 * idx as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"{dash}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            LEFT + 10.0,
            LEFT + 34.0,
            LEFT + 40.0,
            ly + 4.0,
            escape(&key.label())
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn emit_plot(rows: &[SummaryRow], path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(rows))?;
    Ok(())
}
