//! Hand-rolled SVG renderings of benchmark outputs: log-log convergence
//! lines and per-digit deviation boxplots. These are convenience views of
//! the CSVs; the only contract is that the output is valid SVG.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use nbd::benchmark::{DigitErrorRow, Metric, SummaryRow};
use nbd::samplers::SamplerKind;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 55.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        let span = (self.x_max - self.x_min).max(1e-12);
        MARGIN_LEFT + (v - self.x_min) / span * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        let span = (self.y_max - self.y_min).max(1e-12);
        HEIGHT - MARGIN_BOTTOM - (v - self.y_min) / span * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn open_svg(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
}

fn axes(out: &mut String, x_label: &str, y_label: &str) {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = writeln!(
        out,
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{x_label}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{y_label}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
}

fn legend_entry(out: &mut String, slot: usize, color: &str, label: &str) {
    let x = WIDTH - MARGIN_RIGHT + 14.0;
    let y = MARGIN_TOP + 16.0 + slot as f64 * 18.0;
    let _ = writeln!(
        out,
        r#"<line x1="{x}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"/>"#,
        y - 4.0,
        x + 20.0,
        y - 4.0
    );
    let _ = writeln!(out, r#"<text x="{}" y="{y}">{label}</text>"#, x + 26.0);
}

/// Mean metric value against design size, both axes logarithmic, one line
/// per (metric, sampler) series.
pub fn convergence_svg(summaries: &[SummaryRow]) -> String {
    let mut series: BTreeMap<(Metric, SamplerKind), Vec<(f64, f64)>> = BTreeMap::new();
    for row in summaries {
        series
            .entry((row.metric, row.sampler))
            .or_default()
            .push(((row.n_points as f64).log2(), row.mean.max(1e-300).log10()));
    }
    let points = series.values().flatten();
    let mut frame = Frame {
        x_min: f64::INFINITY,
        x_max: f64::NEG_INFINITY,
        y_min: f64::INFINITY,
        y_max: f64::NEG_INFINITY,
    };
    for &(x, y) in points {
        frame.x_min = frame.x_min.min(x);
        frame.x_max = frame.x_max.max(x);
        frame.y_min = frame.y_min.min(y);
        frame.y_max = frame.y_max.max(y);
    }
    frame.y_min -= 0.1;
    frame.y_max += 0.1;

    let mut out = String::new();
    open_svg(&mut out);
    axes(&mut out, "design size (log2 scale)", "mean value (log10 scale)");

    // x ticks at each distinct size, labeled with the size itself
    let sizes: BTreeSet<usize> = summaries.iter().map(|r| r.n_points).collect();
    for &n in &sizes {
        let x = frame.x((n as f64).log2());
        let y0 = HEIGHT - MARGIN_BOTTOM;
        let _ = writeln!(
            &mut out,
            r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{}" stroke="black"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            &mut out,
            r#"<text x="{x}" y="{}" text-anchor="middle">{n}</text>"#,
            y0 + 20.0
        );
    }
    // y ticks at integer log10 values
    let mut k = frame.y_min.ceil() as i64;
    while (k as f64) <= frame.y_max {
        let y = frame.y(k as f64);
        let _ = writeln!(
            &mut out,
            r#"<line x1="{}" y1="{y}" x2="{MARGIN_LEFT}" y2="{y}" stroke="black"/>"#,
            MARGIN_LEFT - 5.0
        );
        let _ = writeln!(
            &mut out,
            r#"<text x="{}" y="{}" text-anchor="end">1e{k}</text>"#,
            MARGIN_LEFT - 9.0,
            y + 4.0
        );
        k += 1;
    }

    for (slot, ((metric, sampler), pts)) in series.iter().enumerate() {
        let color = PALETTE[slot % PALETTE.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", frame.x(x), frame.y(y)))
            .collect();
        let _ = writeln!(
            &mut out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            path.join(" ")
        );
        for &(x, y) in pts {
            let _ = writeln!(
                &mut out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                frame.x(x),
                frame.y(y)
            );
        }
        legend_entry(&mut out, slot, color, &format!("{metric} {sampler}"));
    }

    out.push_str("</svg>\n");
    out
}

fn quantile(sorted: &[f64], p: f64) -> f64 {
    let rank = (sorted.len() - 1) as f64 * p;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    sorted[lo] + (rank - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Per-digit deviation boxplots, one box per sampler within each digit
/// group, whiskers at min/max, deviations pooled over dimensions and
/// replicates.
pub fn digit_errors_svg(rows: &[(SamplerKind, usize, DigitErrorRow)]) -> String {
    let mut groups: BTreeMap<(u8, SamplerKind), Vec<f64>> = BTreeMap::new();
    let mut samplers: BTreeSet<SamplerKind> = BTreeSet::new();
    for (sampler, _, row) in rows {
        samplers.insert(*sampler);
        groups
            .entry((row.digit, *sampler))
            .or_default()
            .push(row.deviation);
    }
    let mut frame = Frame {
        x_min: 0.0,
        x_max: 9.0,
        y_min: f64::INFINITY,
        y_max: f64::NEG_INFINITY,
    };
    for values in groups.values() {
        for &v in values {
            frame.y_min = frame.y_min.min(v);
            frame.y_max = frame.y_max.max(v);
        }
    }
    let pad = (frame.y_max - frame.y_min).max(1e-12) * 0.05;
    frame.y_min -= pad;
    frame.y_max += pad;

    let mut out = String::new();
    open_svg(&mut out);
    axes(&mut out, "first digit", "deviation from law");

    // zero reference line
    let zero_y = frame.y(0.0);
    let _ = writeln!(
        &mut out,
        r##"<line x1="{MARGIN_LEFT}" y1="{zero_y}" x2="{}" y2="{zero_y}" stroke="#999" stroke-dasharray="4 3"/>"##,
        WIDTH - MARGIN_RIGHT
    );

    let n_samplers = samplers.len().max(1) as f64;
    let group_width = (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / 9.0;
    let box_width = group_width / (n_samplers + 1.0);

    for digit in 1..=9u8 {
        let center = frame.x(digit as f64 - 0.5);
        let _ = writeln!(
            &mut out,
            r#"<text x="{center}" y="{}" text-anchor="middle">{digit}</text>"#,
            HEIGHT - MARGIN_BOTTOM + 20.0
        );
        for (slot, sampler) in samplers.iter().enumerate() {
            let Some(values) = groups.get(&(digit, *sampler)) else {
                continue;
            };
            let mut sorted = values.clone();
            sorted.sort_by(f64::total_cmp);
            let (lo, q1, med, q3, hi) = (
                sorted[0],
                quantile(&sorted, 0.25),
                quantile(&sorted, 0.5),
                quantile(&sorted, 0.75),
                sorted[sorted.len() - 1],
            );
            let color = PALETTE[slot % PALETTE.len()];
            let x = center + (slot as f64 - (n_samplers - 1.0) / 2.0) * box_width;
            let half = box_width * 0.4;
            let _ = writeln!(
                &mut out,
                r#"<line x1="{x}" y1="{:.2}" x2="{x}" y2="{:.2}" stroke="{color}"/>"#,
                frame.y(hi),
                frame.y(lo)
            );
            let _ = writeln!(
                &mut out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{color}" fill-opacity="0.35" stroke="{color}"/>"#,
                x - half,
                frame.y(q3),
                2.0 * half,
                (frame.y(q1) - frame.y(q3)).max(0.5)
            );
            let _ = writeln!(
                &mut out,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
                x - half,
                frame.y(med),
                x + half,
                frame.y(med)
            );
        }
    }

    for (slot, sampler) in samplers.iter().enumerate() {
        legend_entry(&mut out, slot, PALETTE[slot % PALETTE.len()], &sampler.to_string());
    }

    out.push_str("</svg>\n");
    out
}
