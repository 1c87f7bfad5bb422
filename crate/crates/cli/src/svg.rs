//! Bare polyline plots. The CSV files hold the data; these are previews.

use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub struct Series<'a> {
    pub label: &'a str,
    pub points: Vec<(f64, f64)>,
}

/// Renders the series on shared axes. With `log_y` non-positive values are dropped.
pub fn plot(title: &str, series: &[Series<'_>], log_y: bool) -> String {
    let ty = |y: f64| if log_y { y.log10() } else { y };
    let usable = |&(x, y): &(f64, f64)| x.is_finite() && y.is_finite() && (!log_y || y > 0.0);

    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in series.iter().flat_map(|s| s.points.iter()).filter(|p| usable(p)) {
        x0 = x0.min(p.0);
        x1 = x1.max(p.0);
        y0 = y0.min(ty(p.1));
        y1 = y1.max(ty(p.1));
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 <= 0.0 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 <= 0.0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (ty(y) - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(out, r#"<text x="{}" y="30" text-anchor="middle" font-size="16">{}</text>"#, WIDTH / 2.0, escape(title));
    let bottom = HEIGHT - MARGIN + 18.0;
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="{bottom}" font-size="12">{x0:.4}</text>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{bottom}" font-size="12" text-anchor="end">{x1:.4}</text>"#,
        WIDTH - MARGIN
    );
    let label_y = |v: f64| if log_y { format!("1e{v:.2}") } else { format!("{v:.4}") };
    let _ = writeln!(out, r#"<text x="5" y="{}" font-size="12">{}</text>"#, HEIGHT - MARGIN, label_y(y0));
    let _ = writeln!(out, r#"<text x="5" y="{}" font-size="12">{}</text>"#, MARGIN + 4.0, label_y(y1));

    for (k, s) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|p| usable(p))
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let ly = MARGIN + 20.0 + 16.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{ly}" font-size="12" fill="{color}">{}</text>"#,
            MARGIN + 10.0,
            escape(s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
