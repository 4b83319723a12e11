//! SVG frames: one `<path>` per polygon, even-odd fill, y axis pointing up.

use std::fmt::Write;

use hausmorph::geom::BBox;
use hausmorph::{Method, Shape};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub width: f64,
    pub height: f64,
    /// Padding around the frames, as a fraction of the larger side of their bounding box.
    pub margin: f64,
    pub frames: Vec<f64>,
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.width > 0.0 && self.height > 0.0 && self.width.is_finite() && self.height.is_finite()) {
            return Err(format!("--canvas: dimensions must be positive, got {}x{}", self.width, self.height));
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(format!("--margin: must be non-negative, got {}", self.margin));
        }
        if self.frames.is_empty() || self.frames.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err("--frames: values must lie in [0, 1]".into());
        }
        if self.frames.windows(2).any(|w| w[0] >= w[1]) {
            return Err("--frames: values must be strictly increasing".into());
        }
        Ok(())
    }
}

pub fn fill_color(method: Method) -> &'static str {
    match method {
        Method::Dilation => "#4c72b0",
        Method::Voronoi => "#dd8452",
        Method::Mixed => "#55a868",
    }
}

/// Bounding box of every frame, padded by the margin; the shared viewBox.
pub fn shared_view(frames: &[&Shape], margin: f64) -> BBox {
    let mut bb = BBox::empty();
    for s in frames {
        if !s.is_empty() {
            bb = bb.union(&s.bbox());
        }
    }
    if bb.is_empty() {
        return BBox { min: hausmorph::Point::new(-1.0, -1.0), max: hausmorph::Point::new(1.0, 1.0) };
    }
    let side = bb.width().max(bb.height());
    let pad = if side > 0.0 { margin * side } else { 1.0 };
    bb.expand(pad)
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

pub fn render_frame(shape: &Shape, view: &BBox, color: &str, opts: &RenderOptions) -> String {
    let mut out = String::new();
    // Flip y so the drawing keeps the shapes' orientation.
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}" preserveAspectRatio="xMidYMid meet">"#,
        num(opts.width),
        num(opts.height),
        num(view.min.x),
        num(-view.max.y),
        num(view.width()),
        num(view.height()),
    );
    for poly in &shape.polygons {
        let mut d = String::new();
        for ring in poly.rings() {
            for (i, p) in ring.vertices().iter().enumerate() {
                let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(p.x), num(-p.y));
            }
            d.push_str("Z ");
        }
        let _ = writeln!(out, r#"  <path d="{}" fill="{color}" fill-rule="evenodd" stroke="none"/>"#, d.trim_end());
    }
    out.push_str("</svg>\n");
    out
}
