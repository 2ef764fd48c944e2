//! Static SVG renderings of the three result views: the gap scatter with
//! its critical diagonal, per-decade box plots of the improvement ratio,
//! and scaling series with error bars. Output is plain deterministic text;
//! byte-identical input gives byte-identical files.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::io::ScalingRow;
use crate::stats::DecadeBin;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 55.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    top: f64,
    bottom: f64,
}

impl Frame {
    fn new(x0: f64, x1: f64, y0: f64, y1: f64, top: f64, bottom: f64) -> Self {
        Self { x0, x1, y0, y1, top, bottom }
    }

    fn x(&self, v: f64) -> f64 {
        MARGIN_L + (v - self.x0) / (self.x1 - self.x0) * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn y(&self, v: f64) -> f64 {
        self.bottom - (v - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top)
    }
}

fn open_svg(out: &mut String, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{height}" fill="white"/>"#);
}

fn line(out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
    let _ = writeln!(
        out,
        r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="{width}"/>"#
    );
}

fn circle(out: &mut String, cx: f64, cy: f64, r: f64, fill: &str, opacity: f64) {
    let _ = writeln!(
        out,
        r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r}" fill="{fill}" fill-opacity="{opacity}"/>"#
    );
}

fn text(out: &mut String, x: f64, y: f64, anchor: &str, content: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}">{content}</text>"#
    );
}

fn pow_label(exp: i32) -> String {
    format!("1e{exp}")
}

fn axes_box(out: &mut String, frame: &Frame) {
    let x_right = WIDTH - MARGIN_R;
    line(out, MARGIN_L, frame.top, MARGIN_L, frame.bottom, "black", 1.0);
    line(out, MARGIN_L, frame.bottom, x_right, frame.bottom, "black", 1.0);
    line(out, x_right, frame.top, x_right, frame.bottom, "black", 0.5);
    line(out, MARGIN_L, frame.top, x_right, frame.top, "black", 0.5);
}

/// Log-log scatter of catalyzed versus uncatalyzed minimum gaps, with the
/// break-even diagonal.
pub fn scatter_svg(pairs: &[(f64, f64)]) -> Result<String> {
    let finite: Vec<(f64, f64)> = pairs
        .iter()
        .cloned()
        .filter(|&(a, b)| a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite())
        .collect();
    if finite.is_empty() {
        return Err(Error::Statistics("nothing to plot: no positive gap pairs".into()));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &(a, b) in &finite {
        lo = lo.min(a.log10()).min(b.log10());
        hi = hi.max(a.log10()).max(b.log10());
    }
    let lo = lo.floor();
    let hi = hi.ceil().max(lo + 1.0);
    let frame = Frame::new(lo, hi, lo, hi, MARGIN_T, HEIGHT - MARGIN_B);

    let mut out = String::new();
    open_svg(&mut out, HEIGHT);
    axes_box(&mut out, &frame);
    for e in (lo as i32)..=(hi as i32) {
        let x = frame.x(e as f64);
        let y = frame.y(e as f64);
        line(&mut out, x, frame.bottom, x, frame.bottom + 4.0, "black", 1.0);
        text(&mut out, x, frame.bottom + 16.0, "middle", &pow_label(e));
        line(&mut out, MARGIN_L - 4.0, y, MARGIN_L, y, "black", 1.0);
        text(&mut out, MARGIN_L - 6.0, y + 4.0, "end", &pow_label(e));
    }
    // break-even diagonal: catalyzed gap equals the plain gap
    line(
        &mut out,
        frame.x(lo),
        frame.y(lo),
        frame.x(hi),
        frame.y(hi),
        "#cc2222",
        1.5,
    );
    for &(a, b) in &finite {
        circle(&mut out, frame.x(a.log10()), frame.y(b.log10()), 2.0, "#1f5fa8", 0.55);
    }
    text(&mut out, (MARGIN_L + WIDTH - MARGIN_R) / 2.0, HEIGHT - 14.0, "middle", "minimum gap, no catalyst");
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">minimum gap, XX catalyst</text>"#,
        (frame.top + frame.bottom) / 2.0,
        (frame.top + frame.bottom) / 2.0
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// Box-and-whisker plot of the gap ratio per decade of the uncatalyzed gap.
/// Median line, mean marker, 1.5 IQR whiskers with caps, outlier dots.
pub fn box_svg(bins: &[DecadeBin]) -> Result<String> {
    if bins.is_empty() {
        return Err(Error::Statistics("nothing to plot: no decade bins".into()));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for b in bins {
        lo = lo.min(b.whisker_lo.log10());
        hi = hi.max(b.whisker_hi.log10());
        for o in &b.outliers {
            lo = lo.min(o.log10());
            hi = hi.max(o.log10());
        }
    }
    let lo = (lo - 0.2).floor();
    let hi = (hi + 0.2).ceil().max(lo + 1.0);
    let frame = Frame::new(0.0, bins.len() as f64, lo, hi, MARGIN_T, HEIGHT - MARGIN_B);

    let mut out = String::new();
    open_svg(&mut out, HEIGHT);
    axes_box(&mut out, &frame);
    for e in (lo as i32)..=(hi as i32) {
        let y = frame.y(e as f64);
        line(&mut out, MARGIN_L - 4.0, y, MARGIN_L, y, "black", 1.0);
        text(&mut out, MARGIN_L - 6.0, y + 4.0, "end", &pow_label(e));
    }
    // unit ratio reference
    let y_one = frame.y(0.0);
    line(&mut out, MARGIN_L, y_one, WIDTH - MARGIN_R, y_one, "#cc2222", 0.8);

    for (k, b) in bins.iter().enumerate() {
        let cx = frame.x(k as f64 + 0.5);
        let half = 0.28 * (frame.x(1.0) - frame.x(0.0));
        let cap = half * 0.5;
        let yq1 = frame.y(b.q1.log10());
        let yq3 = frame.y(b.q3.log10());
        let ymed = frame.y(b.median.log10());
        let ylo = frame.y(b.whisker_lo.log10());
        let yhi = frame.y(b.whisker_hi.log10());
        let _ = writeln!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#d9e6f2" stroke="black" stroke-width="1"/>"##,
            cx - half,
            yq3,
            2.0 * half,
            (yq1 - yq3).max(0.5),
        );
        line(&mut out, cx - half, ymed, cx + half, ymed, "#7b2d8b", 2.0);
        line(&mut out, cx, yq3, cx, yhi, "black", 1.0);
        line(&mut out, cx, yq1, cx, ylo, "black", 1.0);
        line(&mut out, cx - cap, yhi, cx + cap, yhi, "black", 1.0);
        line(&mut out, cx - cap, ylo, cx + cap, ylo, "black", 1.0);
        circle(&mut out, cx, frame.y(b.mean.log10()), 3.0, "#e0b020", 1.0);
        for o in &b.outliers {
            circle(&mut out, cx, frame.y(o.log10()), 2.0, "#e67e22", 0.8);
        }
        text(&mut out, cx, frame.bottom + 16.0, "middle", &pow_label(-b.exponent));
    }
    text(&mut out, (MARGIN_L + WIDTH - MARGIN_R) / 2.0, HEIGHT - 14.0, "middle", "minimum gap decade, no catalyst");
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">gap ratio</text>"#,
        (frame.top + frame.bottom) / 2.0,
        (frame.top + frame.bottom) / 2.0
    );
    out.push_str("</svg>\n");
    Ok(out)
}

const SERIES_COLORS: [&str; 4] = ["#c0392b", "#2980b9", "#e67e22", "#27ae60"];

/// Scaling series: improved fraction and geometric-mean improvement versus
/// problem size, one panel each, with bootstrap error bars.
pub fn scaling_svg(rows: &[ScalingRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Statistics("nothing to plot: no scaling rows".into()));
    }
    // group rows into series by (model, param)
    let mut series: Vec<(String, Vec<&ScalingRow>)> = Vec::new();
    for row in rows {
        let label = match row.model.as_str() {
            "er" => format!("er p={}", row.param),
            _ => format!("{} m={}", row.model, row.param),
        };
        match series.iter_mut().find(|(l, _)| *l == label) {
            Some((_, v)) => v.push(row),
            None => series.push((label, vec![row])),
        }
    }
    let n_lo = rows.iter().map(|r| r.n).min().unwrap() as f64 - 0.5;
    let n_hi = rows.iter().map(|r| r.n).max().unwrap() as f64 + 0.5;
    let g_hi = rows.iter().map(|r| r.geo_hi).fold(1.0f64, f64::max) * 1.1;

    let total_height = 2.0 * HEIGHT * 0.75;
    let panel = HEIGHT * 0.75;
    let mut out = String::new();
    open_svg(&mut out, total_height);

    let draw_panel = |out: &mut String,
                          top: f64,
                          y0: f64,
                          y1: f64,
                          value: &dyn Fn(&ScalingRow) -> (f64, f64, f64),
                          title: &str| {
        let frame = Frame::new(n_lo, n_hi, y0, y1, top + MARGIN_T, top + panel - MARGIN_B);
        axes_box(out, &frame);
        let ticks = 5;
        for t in 0..=ticks {
            let v = y0 + (y1 - y0) * t as f64 / ticks as f64;
            let y = frame.y(v);
            line(out, MARGIN_L - 4.0, y, MARGIN_L, y, "black", 1.0);
            text(out, MARGIN_L - 6.0, y + 4.0, "end", &format!("{v:.2}"));
        }
        let mut n_ticks: Vec<usize> = rows.iter().map(|r| r.n).collect();
        n_ticks.sort_unstable();
        n_ticks.dedup();
        for &n in &n_ticks {
            let x = frame.x(n as f64);
            line(out, x, frame.bottom, x, frame.bottom + 4.0, "black", 1.0);
            text(out, x, frame.bottom + 16.0, "middle", &n.to_string());
        }
        for (si, (label, points)) in series.iter().enumerate() {
            let color = SERIES_COLORS[si % SERIES_COLORS.len()];
            let mut sorted: Vec<&&ScalingRow> = points.iter().collect();
            sorted.sort_by_key(|r| r.n);
            let mut path = String::new();
            for (k, row) in sorted.iter().enumerate() {
                let (v, vlo, vhi) = value(row);
                let x = frame.x(row.n as f64);
                let y = frame.y(v);
                let _ = write!(path, "{}{x:.2},{y:.2}", if k == 0 { "" } else { " " });
                line(out, x, frame.y(vlo), x, frame.y(vhi), color, 1.0);
                line(out, x - 3.0, frame.y(vlo), x + 3.0, frame.y(vlo), color, 1.0);
                line(out, x - 3.0, frame.y(vhi), x + 3.0, frame.y(vhi), color, 1.0);
                circle(out, x, y, 3.0, color, 1.0);
            }
            let _ = writeln!(
                out,
                r#"<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.2"/>"#
            );
            let lx = WIDTH - MARGIN_R - 130.0;
            let ly = top + MARGIN_T + 16.0 + 14.0 * si as f64;
            circle(out, lx, ly - 3.5, 3.0, color, 1.0);
            text(out, lx + 8.0, ly, "start", label);
        }
        text(out, (MARGIN_L + WIDTH - MARGIN_R) / 2.0, top + 16.0, "middle", title);
        text(out, (MARGIN_L + WIDTH - MARGIN_R) / 2.0, top + panel - 14.0, "middle", "vertices");
    };

    draw_panel(
        &mut out,
        0.0,
        0.0,
        1.0,
        &|r| (r.fraction_improved, r.fraction_lo, r.fraction_hi),
        "fraction of hard instances improved",
    );
    draw_panel(
        &mut out,
        panel,
        0.0,
        g_hi,
        &|r| (r.geo_mean, r.geo_lo, r.geo_hi),
        "geometric mean gap improvement",
    );
    out.push_str("</svg>\n");
    Ok(out)
}
