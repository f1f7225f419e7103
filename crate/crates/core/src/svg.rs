//! Minimal SVG emission for report figures.
//!
//! Hand-rolled so figure output stays dependency-free and byte-deterministic.

use std::fmt::Write as _;

/// Linear map from a data interval onto a pixel interval.
#[derive(Debug, Clone, Copy)]
pub struct Scale {
    d0: f64,
    d1: f64,
    p0: f64,
    p1: f64,
}

impl Scale {
    pub fn new(domain: (f64, f64), range: (f64, f64)) -> Self {
        Scale {
            d0: domain.0,
            d1: domain.1,
            p0: range.0,
            p1: range.1,
        }
    }

    pub fn map(&self, x: f64) -> f64 {
        if self.d1 == self.d0 {
            return (self.p0 + self.p1) / 2.0;
        }
        self.p0 + (x - self.d0) / (self.d1 - self.d0) * (self.p1 - self.p0)
    }
}

/// Accumulates SVG elements and renders a standalone document.
#[derive(Debug, Clone)]
pub struct SvgDoc {
    width: f64,
    height: f64,
    body: String,
}

fn fmt_coord(x: f64) -> String {
    format!("{:.2}", x)
}

impl SvgDoc {
    pub fn new(width: f64, height: f64) -> Self {
        SvgDoc {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
            fmt_coord(x1),
            fmt_coord(y1),
            fmt_coord(x2),
            fmt_coord(y2),
            stroke,
            width
        );
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64) {
        let coords: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{},{}", fmt_coord(*x), fmt_coord(*y)))
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
            coords.join(" "),
            stroke,
            width
        );
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            fmt_coord(cx),
            fmt_coord(cy),
            r,
            fill
        );
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str, opacity: f64) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}" fill-opacity="{}"/>"#,
            fmt_coord(x),
            fmt_coord(y),
            fmt_coord(w.max(0.0)),
            fmt_coord(h.max(0.0)),
            fill,
            opacity
        );
    }

    /// Filled translucent band between two polylines sharing x coordinates.
    pub fn band(&mut self, upper: &[(f64, f64)], lower: &[(f64, f64)], fill: &str, opacity: f64) {
        let mut coords: Vec<String> = upper
            .iter()
            .map(|(x, y)| format!("{},{}", fmt_coord(*x), fmt_coord(*y)))
            .collect();
        coords.extend(
            lower
                .iter()
                .rev()
                .map(|(x, y)| format!("{},{}", fmt_coord(*x), fmt_coord(*y))),
        );
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{}" fill-opacity="{}" stroke="none"/>"#,
            coords.join(" "),
            fill,
            opacity
        );
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, content: &str) {
        let escaped = content
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" font-size="{}" font-family="sans-serif" text-anchor="{}">{}</text>"#,
            fmt_coord(x),
            fmt_coord(y),
            size,
            anchor,
            escaped
        );
    }

    pub fn render(&self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}

/// Color ramp from blue through purple to red, t in [0,1].
pub fn blue_red(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let r = (40.0 + 200.0 * t) as u8;
    let g = (60.0 * (1.0 - (2.0 * t - 1.0).abs())) as u8;
    let b = (220.0 - 190.0 * t) as u8;
    format!("rgb({},{},{})", r, g, b)
}

/// Color ramp from red through orange to green, t in [0,1].
pub fn red_green(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let r = (210.0 * (1.0 - t) + 40.0) as u8;
    let g = (40.0 + 170.0 * t) as u8;
    format!("rgb({},{},60)", r, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_well_formed_document() {
        let mut doc = SvgDoc::new(100.0, 50.0);
        doc.line(0.0, 0.0, 100.0, 50.0, "black", 1.0);
        doc.text(10.0, 10.0, 9.0, "start", "a<b&c");
        let out = doc.render();
        assert!(out.starts_with("<svg"));
        assert!(out.ends_with("</svg>\n"));
        assert!(out.contains("a&lt;b&amp;c"));
    }

    #[test]
    fn scale_maps_endpoints() {
        let s = Scale::new((0.0, 2.0), (10.0, 110.0));
        assert_eq!(s.map(0.0), 10.0);
        assert_eq!(s.map(2.0), 110.0);
        assert_eq!(s.map(1.0), 60.0);
    }
}
