//! Polyline plots drawn straight from CSV text. Nothing is computed here
//! beyond the mapping to pixel coordinates; every CSV row becomes a vertex.

use std::fmt::Write;

use crate::CliError;

const W: f64 = 720.0;
const H: f64 = 440.0;
const ML: f64 = 80.0;
const MR: f64 = 150.0;
const MT: f64 = 40.0;
const MB: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn column(headers: &csv::StringRecord, name: &str) -> Result<usize, CliError> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| CliError::Usage(format!("plot: no column `{name}`")))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut v = Vec::new();
    while t <= hi + 1e-9 * span {
        v.push(if t.abs() < 1e-12 * step { 0.0 } else { t });
        t += step;
    }
    v
}

pub fn render_csv(csv_bytes: &[u8], x: &str, ys: &[&str], title: &str) -> Result<String, CliError> {
    let mut rdr = csv::Reader::from_reader(csv_bytes);
    let headers = rdr.headers().map_err(|e| CliError::Usage(format!("plot: {e}")))?.clone();
    let xi = column(&headers, x)?;
    let yi: Vec<usize> = ys.iter().map(|y| column(&headers, y)).collect::<Result<_, _>>()?;
    let mut series: Vec<Vec<(f64, f64)>> = vec![Vec::new(); ys.len()];
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CliError::Usage(format!("plot: {e}")))?;
        let Some(xv) = rec.get(xi).and_then(|s| s.parse::<f64>().ok()) else { continue };
        for (k, &c) in yi.iter().enumerate() {
            if let Some(yv) = rec.get(c).and_then(|s| s.parse::<f64>().ok()).filter(|v| v.is_finite()) {
                series[k].push((xv, yv));
            }
        }
    }
    let pts = series.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(a, b) in pts {
        x0 = x0.min(a);
        x1 = x1.max(a);
        y0 = y0.min(b);
        y1 = y1.max(b);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        let pad = y0.abs().max(1.0) * 0.05;
        (y0, y1) = (y0 - pad, y1 + pad);
    } else {
        let pad = 0.05 * (y1 - y0);
        (y0, y1) = (y0 - pad, y1 + pad);
    }
    let pw = W - ML - MR;
    let ph = H - MT - MB;
    let px = |v: f64| ML + (v - x0) / (x1 - x0) * pw;
    let py = |v: f64| MT + (y1 - v) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, ML + pw / 2.0, escape(title));
    let _ = writeln!(s, r#"<rect x="{ML}" y="{MT}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    for t in ticks(x0, x1) {
        let xp = px(t);
        let _ = writeln!(s, r#"<line x1="{xp:.2}" y1="{}" x2="{xp:.2}" y2="{}" stroke="black"/>"#, MT + ph, MT + ph + 5.0);
        let _ = writeln!(s, r#"<text x="{xp:.2}" y="{}" text-anchor="middle">{}</text>"#, MT + ph + 18.0, format_tick(t));
    }
    for t in ticks(y0, y1) {
        let yp = py(t);
        let _ = writeln!(s, r#"<line x1="{}" y1="{yp:.2}" x2="{ML}" y2="{yp:.2}" stroke="black"/>"#, ML - 5.0);
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, ML - 8.0, yp + 4.0, format_tick(t));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, ML + pw / 2.0, H - 10.0, escape(x));
    for (k, pts) in series.iter().enumerate() {
        let c = COLORS[k % COLORS.len()];
        let mut path = String::new();
        for &(a, b) in pts {
            let _ = write!(path, "{:.3},{:.3} ", px(a), py(b));
        }
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
            path.trim_end(),
            escape(ys[k])
        );
        for &(a, b) in pts {
            let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="2" fill="{c}"/>"#, px(a), py(b));
        }
        let ly = MT + 10.0 + 18.0 * k as f64;
        let lx = W - MR + 12.0;
        let _ = writeln!(s, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{c}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(ys[k]));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn format_tick(t: f64) -> String {
    if t != 0.0 && (t.abs() < 1e-3 || t.abs() >= 1e5) {
        format!("{t:.1e}")
    } else {
        let s = format!("{t:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex_per_row() {
        let csv = b"t,a,b\n0,1,2\n1,3,\n2,5,6\n";
        let svg = render_csv(csv, "t", &["a", "b"], "demo").unwrap();
        assert_eq!(svg.matches("<circle").count(), 5);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(render_csv(csv, "t", &["c"], "x").is_err());
    }
}
