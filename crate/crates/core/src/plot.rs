//! Plain SVG line charts for P_USp^k on [0, 1] and W_USp^k on [−3, 3].

use std::fmt::Write;

use crate::kernel::{kernel_eval, SymmetryClass};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag)
}

/// One chart with axes, ticks and a legend.
pub fn line_chart(title: &str, series: &[Series]) -> String {
    let pts = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !(x1 > x0) {
        x1 = x0 + 1.0;
    }
    let pad = 0.05 * (y1 - y0).max(1e-9);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{title}</text>"#, WIDTH / 2.0);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let step = nice_step(x1 - x0);
    let mut t = (x0 / step).ceil() * step;
    while t <= x1 + 1e-12 {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            sx(t),
            HEIGHT - MARGIN + 15.0,
            (t * 1e6).round() / 1e6
        );
        t += step;
    }
    let step = nice_step(y1 - y0);
    let mut t = (y0 / step).ceil() * step;
    while t <= y1 + 1e-12 {
        let _ = writeln!(
            s,
            r#"<line x1="{MARGIN}" x2="{:.2}" y1="{y:.2}" y2="{y:.2}" stroke="lightgray"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            WIDTH - MARGIN,
            MARGIN - 5.0,
            sy(t) + 4.0,
            (t * 1e6).round() / 1e6,
            y = sy(t)
        );
        t += step;
    }
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            r#"<line x1="{MARGIN}" x2="{:.2}" y1="{y:.2}" y2="{y:.2}" stroke="gray"/>"#,
            WIDTH - MARGIN,
            y = sy(0.0)
        );
    }
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, path.join(" "));
        let ly = MARGIN + 15.0 + 15.0 * i as f64;
        let lx = WIDTH - MARGIN - 70.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" x2="{}" y1="{ly}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 18.0,
            lx + 22.0,
            ly + 4.0,
            ser.label
        );
    }
    s.push_str("</svg>\n");
    s
}

/// P_USp^k(y) for y ∈ [0, 1], k = 0..=k_max.
pub fn poly_figure(k_max: u32, points: usize) -> String {
    let series: Vec<Series> = (0..=k_max)
        .map(|k| {
            let kern = crate::kernel::kernel(SymmetryClass::USp, k);
            let p = kern.poly_f64();
            Series {
                label: format!("k = {k}"),
                points: (0..points)
                    .map(|i| {
                        let y = i as f64 / (points - 1) as f64;
                        (y, p.iter().rev().fold(0.0, |a, c| a * y + c))
                    })
                    .collect(),
            }
        })
        .collect();
    line_chart("P_USp^k(y), y in [0, 1]", &series)
}

/// W_USp^k(x) for x ∈ [−3, 3], k = 0..=k_max.
pub fn kernel_figure(k_max: u32, points: usize) -> String {
    let series: Vec<Series> = (0..=k_max)
        .map(|k| Series {
            label: format!("k = {k}"),
            points: (0..points)
                .map(|i| {
                    let x = -3.0 + 6.0 * i as f64 / (points - 1) as f64;
                    (x, kernel_eval(SymmetryClass::USp, k, x))
                })
                .collect(),
        })
        .collect();
    line_chart("W_USp^k(x), x in [-3, 3]", &series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figures_are_svg_with_one_polyline_per_k() {
        for svg in [poly_figure(4, 101), kernel_figure(4, 301)] {
            assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
            assert_eq!(svg.matches("<polyline").count(), 5);
            assert!(!svg.contains("NaN"));
        }
    }
}
