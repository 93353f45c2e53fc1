//! SVG figures of mosaics: one filled path per tile, coloured by the order of its index tuple.

use std::fmt::Write;

use fareyap::rational::to_decimal;
use fareyap::{Mosaic, RatPoint};

/// Decimal digits used for every coordinate written in unit-square space.
pub const PRECISION: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColorKey {
    #[default]
    ByOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    /// Colours by order, reused cyclically. Never empty.
    pub palette: Vec<String>,
    pub color_key: ColorKey,
    pub labels: bool,
    pub background: String,
}

impl Default for RenderSpec {
    fn default() -> Self {
        let palette = [
            "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f",
            "#bab0ac", "#86bcb6", "#d37295",
        ];
        RenderSpec {
            width: 800,
            height: 800,
            margin: 40,
            palette: palette.iter().map(|s| s.to_string()).collect(),
            color_key: ColorKey::ByOrder,
            labels: false,
            background: "#ffffff".into(),
        }
    }
}

impl RenderSpec {
    pub fn color(&self, order: usize) -> &str {
        if self.palette.is_empty() {
            return "#808080";
        }
        match self.color_key {
            ColorKey::ByOrder => &self.palette[order % self.palette.len()],
        }
    }

    fn plot_size(&self) -> (f64, f64) {
        let m = 2.0 * self.margin as f64;
        ((self.width as f64 - m).max(1.0), (self.height as f64 - m).max(1.0))
    }

    fn to_pixels(&self, x: f64, y: f64) -> (f64, f64) {
        let (w, h) = self.plot_size();
        (self.margin as f64 + x * w, self.height as f64 - self.margin as f64 - y * h)
    }
}

fn point(p: &RatPoint) -> String {
    format!("{} {}", to_decimal(&p.x, PRECISION), to_decimal(&p.y, PRECISION))
}

/// Path data `M x y L x y … Z` in unit-square coordinates.
pub fn path_data(vertices: &[RatPoint]) -> String {
    let mut d = String::new();
    for (i, v) in vertices.iter().enumerate() {
        d.push_str(if i == 0 { "M " } else { " L " });
        d.push_str(&point(v));
    }
    d.push_str(" Z");
    d
}

/// Renders every tile of every mosaic; the unit square fills the viewport with `y` pointing up.
pub fn render_mosaics(mosaics: &[Mosaic], spec: &RenderSpec) -> String {
    let (w, h) = spec.plot_size();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        spec.width, spec.height
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="{}"/>"#, spec.background);
    let _ = writeln!(
        s,
        r#"<g transform="translate({} {}) scale({} {})">"#,
        spec.margin,
        spec.height - spec.margin,
        w,
        -h
    );
    let _ = writeln!(
        s,
        r##"<polyline class="axes" points="0 1 0 0 1 0" fill="none" stroke="#000000" vector-effect="non-scaling-stroke"/>"##
    );
    for m in mosaics {
        for t in &m.tiles {
            let _ = writeln!(
                s,
                r##"<path d="{}" fill="{}" stroke="#ffffff" stroke-width="0.5" vector-effect="non-scaling-stroke" data-k="{}" data-order="{}"/>"##,
                path_data(t.poly.vertices()),
                spec.color(t.order()),
                t.k.spaced(),
                t.order()
            );
        }
        for lp in &m.outline.loops {
            let pts: Vec<String> = lp.iter().map(point).collect();
            let _ = writeln!(
                s,
                r##"<polygon class="outline" points="{}" fill="none" stroke="#000000" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"##,
                pts.join(" ")
            );
        }
    }
    s.push_str("</g>\n");
    for (v, (x, y)) in [("0", (0.0, 0.0)), ("1", (1.0, 0.0))] {
        let (px, py) = spec.to_pixels(x, y);
        let _ = writeln!(s, r#"<text x="{px:.2}" y="{:.2}" font-size="12" text-anchor="middle">{v}</text>"#, py + 16.0);
    }
    let (px, py) = spec.to_pixels(0.0, 1.0);
    let _ = writeln!(s, r#"<text x="{:.2}" y="{py:.2}" font-size="12" text-anchor="end">1</text>"#, px - 6.0);
    if spec.labels {
        for m in mosaics {
            for t in &m.tiles {
                let (cx, cy) = t.poly.centroid_f64();
                let (px, py) = spec.to_pixels(cx, cy);
                let _ = writeln!(
                    s,
                    r#"<text x="{px:.2}" y="{py:.2}" font-size="7" text-anchor="middle">{}</text>"#,
                    t.k.spaced()
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}
