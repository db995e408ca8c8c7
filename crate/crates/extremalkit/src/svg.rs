//! Standalone SVG rendering of drawings. Coordinates are converted to
//! floating point here and nowhere else.

use std::fmt::Write;

use extremalkit_core::geometry::{analyze, Drawing};
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Size of the longer side of the canvas, in pixels.
    pub size: f64,
    pub vertex_radius: f64,
    pub label_vertices: bool,
    pub mark_crossings: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 600.0,
            vertex_radius: 5.0,
            label_vertices: true,
            mark_crossings: true,
        }
    }
}

fn to_f64(v: &extremalkit_core::Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn intersection(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> (f64, f64) {
    let (rx, ry) = (b.0 - a.0, b.1 - a.1);
    let (sx, sy) = (d.0 - c.0, d.1 - c.1);
    let t = ((c.0 - a.0) * sy - (c.1 - a.1) * sx) / (rx * sy - ry * sx);
    (a.0 + t * rx, a.1 + t * ry)
}

/// Renders `drawing`. Crossings are marked only when the drawing is legal.
pub fn export_svg(drawing: &Drawing, options: &SvgOptions) -> String {
    let pts: Vec<(f64, f64)> = drawing
        .positions()
        .iter()
        .map(|p| (to_f64(&p.x), to_f64(&p.y)))
        .collect();
    let crossings = if options.mark_crossings {
        analyze(drawing).map(|s| s.crossings).unwrap_or_default()
    } else {
        Vec::new()
    };

    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0f64, 1.0f64, 0.0f64, 1.0f64);
    if let Some(&(x, y)) = pts.first() {
        (min_x, max_x, min_y, max_y) = (x, x, y, y);
        for &(x, y) in &pts {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
    }
    let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
    let margin = 4.0 * options.vertex_radius + 10.0;
    let scale = options.size / span;
    // stretch very flat pictures vertically so both lines stay readable
    let y_span = max_y - min_y;
    let scale_y = if y_span > 0.0 && y_span * scale < options.size / 3.0 {
        options.size / 3.0 / y_span
    } else {
        scale
    };
    let width = (max_x - min_x) * scale + 2.0 * margin;
    let height = y_span * scale_y + 2.0 * margin;
    // y grows downward in SVG
    let map = |(x, y): (f64, f64)| ((x - min_x) * scale + margin, (max_y - y) * scale_y + margin);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1.5">"#);
    for (u, v) in drawing.graph().edges() {
        let (x1, y1) = map(pts[u]);
        let (x2, y2) = map(pts[v]);
        let _ = writeln!(out, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    if !crossings.is_empty() {
        let _ = writeln!(out, r#"<g fill="red" class="crossings">"#);
        for (e, f) in &crossings {
            let p = intersection(pts[e.0], pts[e.1], pts[f.0], pts[f.1]);
            let (x, y) = map(p);
            let r = options.vertex_radius * 0.6;
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r:.2}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, r#"<g fill="black" font-family="sans-serif" font-size="12">"#);
    for (v, &p) in pts.iter().enumerate() {
        let (x, y) = map(p);
        let r = options.vertex_radius;
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r:.2}"/>"#);
        if options.label_vertices {
            let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}">{v}</text>"#, x + r + 1.0, y - r - 1.0);
        }
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use extremalkit_core::drawings::draw_diam4;
    use extremalkit_core::{Diam4Descriptor, Graph};

    #[test]
    fn empty_drawing() {
        let d = Drawing::new(Graph::empty(0), Vec::new()).unwrap();
        let svg = export_svg(&d, &SvgOptions::default());
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn marks_every_crossing() {
        let desc = Diam4Descriptor::new(vec![3, 2, 2, 1]).unwrap();
        let d = draw_diam4(&desc).unwrap().drawing;
        let svg = export_svg(&d, &SvgOptions::default());
        let marks = svg.split(r#"class="crossings""#).nth(1).unwrap().split("</g>").next().unwrap();
        assert_eq!(marks.matches("<circle").count(), 44);
        assert_eq!(svg.matches("<line").count(), 12);
    }
}
