//! Static SVG drawings of instances and selections.
//!
//! Output depends only on the inputs: coordinates are printed with fixed precision and
//! elements are emitted in region order.

use crate::connectivity::mbst;
use crate::error::{Error, Result};
use crate::geometry::{BBox, Point2};
use crate::instance::{Instance, Region, Selection};
use std::fmt::Write;

pub const BLUE: &str = "#1f5fbf";
pub const RED: &str = "#c8302c";
pub const GREEN: &str = "#2e9a3e";
pub const BROWN: &str = "#8a5a2b";
const INK: &str = "#333333";
pub const GRAY: &str = "#9a9a9a";
const ALPHA_FILL: &str = "#f2a33a";

#[derive(Debug, Clone, Default)]
pub struct RenderOptions {
    pub selection: Option<Selection>,
    /// Draw a disk of this radius around every selected point.
    pub alpha: Option<f64>,
    /// Colors of the lower and upper candidate of each region; pairs default to blue/red.
    pub candidate_colors: Option<Vec<[&'static str; 2]>>,
    /// Drawing width in pixels; the height follows the aspect ratio.
    pub width_px: Option<f64>,
}

struct View {
    min: Point2,
    max_y: f64,
    scale: f64,
}

impl View {
    fn x(&self, x: f64) -> f64 {
        (x - self.min.x) * self.scale
    }
    fn y(&self, y: f64) -> f64 {
        (self.max_y - y) * self.scale
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Renders `inst` and the optional selection, spanning tree and alpha disks as SVG text.
pub fn render_svg(inst: &Instance, opts: &RenderOptions) -> Result<String> {
    if let Some(sel) = &opts.selection {
        if sel.points.len() != inst.len() {
            return Err(Error::InvalidSelection(format!(
                "selection has {} points but the instance has {} regions",
                sel.points.len(),
                inst.len()
            )));
        }
    }
    if let Some(c) = &opts.candidate_colors {
        if c.len() != inst.len() {
            return Err(Error::LengthMismatch(c.len(), inst.len()));
        }
    }
    let b: BBox = inst.bbox();
    let span = b.width().max(b.height()).max(1e-9);
    let margin = 0.05 * span;
    let width_px = opts.width_px.unwrap_or(800.0);
    let scale = width_px / (b.width() + 2.0 * margin).max(1e-9);
    let height_px = (b.height() + 2.0 * margin) * scale;
    let v = View { min: Point2::new(b.min.x - margin, b.min.y - margin), max_y: b.max.y + margin, scale };
    let dot = (width_px / 200.0).clamp(1.0, 4.0);
    let stroke = dot / 2.0;

    let mut s = String::new();
    let w = &mut s;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width_px),
        num(height_px),
        num(width_px),
        num(height_px)
    );
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);

    if let (Some(sel), Some(alpha)) = (&opts.selection, opts.alpha) {
        let _ = writeln!(w, r#"<g fill="{ALPHA_FILL}" fill-opacity="0.15" stroke="none">"#);
        for p in &sel.points {
            let _ = writeln!(w, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(v.x(p.x)), num(v.y(p.y)), num(alpha * scale));
        }
        let _ = writeln!(w, "</g>");
    }

    let _ = writeln!(w, r#"<g fill="none" stroke="{INK}" stroke-width="{}">"#, num(stroke));
    for (i, r) in inst.regions.iter().enumerate() {
        let colors = opts.candidate_colors.as_ref().map_or([BLUE, RED], |c| c[i]);
        match *r {
            Region::FixedPoint(p) => {
                let _ = writeln!(w, r#"<circle cx="{}" cy="{}" r="{}" fill="{INK}"/>"#, num(v.x(p.x)), num(v.y(p.y)), num(dot));
            }
            Region::PointPair(a, c) => {
                for (p, col) in [(a, colors[0]), (c, colors[1])] {
                    let _ = writeln!(
                        w,
                        r#"<circle cx="{}" cy="{}" r="{}" fill="{col}" stroke="none"/>"#,
                        num(v.x(p.x)),
                        num(v.y(p.y)),
                        num(dot)
                    );
                }
            }
            Region::Segment(seg) => {
                let _ = writeln!(
                    w,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    num(v.x(seg.a.x)),
                    num(v.y(seg.a.y)),
                    num(v.x(seg.b.x)),
                    num(v.y(seg.b.y))
                );
            }
            Region::UnitDisk(_) | Region::Disk { .. } => {
                let c = r.center();
                let _ = writeln!(w, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(v.x(c.x)), num(v.y(c.y)), num(r.radius() * scale));
            }
            Region::Square { corner, side } => {
                let _ = writeln!(
                    w,
                    r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                    num(v.x(corner.x)),
                    num(v.y(corner.y + side)),
                    num(side * scale),
                    num(side * scale)
                );
            }
        }
    }
    let _ = writeln!(w, "</g>");

    if let Some(sel) = &opts.selection {
        let tree = mbst(&sel.points);
        let _ = writeln!(w, r#"<g stroke="{INK}" stroke-width="{}" stroke-opacity="0.7">"#, num(stroke));
        for &(i, j) in &tree.edges {
            let (p, q) = (sel.points[i], sel.points[j]);
            let _ = writeln!(w, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(v.x(p.x)), num(v.y(p.y)), num(v.x(q.x)), num(v.y(q.y)));
        }
        let _ = writeln!(w, "</g>");
        let _ = writeln!(w, r#"<g fill="black">"#);
        for p in &sel.points {
            let _ = writeln!(w, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(v.x(p.x)), num(v.y(p.y)), num(dot * 0.6));
        }
        let _ = writeln!(w, "</g>");
    }
    let _ = writeln!(w, "</svg>");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_trimmed() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(0.1234), "0.123");
        assert_eq!(num(-0.0001), "0");
    }
}
