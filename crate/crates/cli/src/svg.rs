//! Static SVG drawing of a map's graph over the unit square.

use std::fmt::Write;

use entroscope::rational::to_f64;
use entroscope::PlMap;

pub const SIZE: f64 = 512.0;

/// A 512×512 drawing: the unit square, the diagonal, and the graph of `f`
/// as one polyline.
pub fn render(f: &PlMap, title: &str) -> String {
    let coords: Vec<String> = f
        .points()
        .iter()
        .map(|p| format!("{:.3},{:.3}", to_f64(&p.x) * SIZE, (1.0 - to_f64(&p.y)) * SIZE))
        .collect();
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 512 512" width="512" height="512">"#).unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(out, r##"<rect x="0" y="0" width="512" height="512" fill="white" stroke="#888" stroke-width="1"/>"##).unwrap();
    writeln!(out, r##"<line x1="0" y1="512" x2="512" y2="0" stroke="#ccc" stroke-width="1"/>"##).unwrap();
    writeln!(
        out,
        r##"<polyline fill="none" stroke="#1f4e99" stroke-width="1.5" points="{}"/>"##,
        coords.join(" ")
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
