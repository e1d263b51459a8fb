//! Deterministic SVG output for planar shapes.

use std::fmt::Write;

use wulff_core::{ConvexPolygon, PlanePoint};

pub const CANVAS: f64 = 800.0;
/// Half-width of the visible world square, centered on the origin.
pub const WORLD: f64 = 2.2;

const COLORS: [&str; 2] = ["#1f5fbf", "#c23b22"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Style {
    /// Outlines drawn on top of each other.
    Overlay,
    /// Translucent fills under the outlines.
    Filled,
}

fn px(x: PlanePoint) -> (f64, f64) {
    let s = CANVAS / (2.0 * WORLD);
    ((x.u + WORLD) * s, (WORLD - x.v) * s)
}

fn num(out: &mut String, v: f64) {
    // Four decimals; normalize -0 so output never depends on the sign of zero.
    let r = (v * 1e4).round() / 1e4;
    let r = if r == 0.0 { 0.0 } else { r };
    write!(out, "{r:.4}").unwrap();
}

fn path(w: &ConvexPolygon) -> String {
    let mut d = String::new();
    for (i, &v) in w.vertices().iter().enumerate() {
        let (x, y) = px(v);
        d.push(if i == 0 { 'M' } else { 'L' });
        num(&mut d, x);
        d.push(' ');
        num(&mut d, y);
        d.push(' ');
    }
    d.push('Z');
    d
}

pub fn render(shapes: &[ConvexPolygon], style: Style) -> String {
    let mut out = String::new();
    let size = CANVAS as u32;
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(
        out,
        r##"<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>"##
    )
    .unwrap();

    let (cx, cy) = px(PlanePoint::ORIGIN);
    let mut s = String::new();
    s.push_str(r##"<circle id="unit-circle" fill="none" stroke="#999999" stroke-width="1" stroke-dasharray="4 4" cx=""##);
    num(&mut s, cx);
    s.push_str(r#"" cy=""#);
    num(&mut s, cy);
    s.push_str(r#"" r=""#);
    num(&mut s, CANVAS / (2.0 * WORLD));
    s.push_str(r#""/>"#);
    writeln!(out, "{s}").unwrap();
    let mut s = String::new();
    s.push_str(r##"<path id="origin" stroke="#333333" stroke-width="1" d="M"##);
    num(&mut s, cx - 6.0);
    s.push(' ');
    num(&mut s, cy);
    s.push_str(" H");
    num(&mut s, cx + 6.0);
    s.push_str(" M");
    num(&mut s, cx);
    s.push(' ');
    num(&mut s, cy - 6.0);
    s.push_str(" V");
    num(&mut s, cy + 6.0);
    s.push_str(r#""/>"#);
    writeln!(out, "{s}").unwrap();

    for (i, w) in shapes.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let fill = match style {
            Style::Overlay => "none".to_string(),
            Style::Filled => color.to_string(),
        };
        let opacity = match style {
            Style::Overlay => "",
            Style::Filled => r#" fill-opacity="0.15""#,
        };
        writeln!(
            out,
            r#"<path id="shape-{i}" fill="{fill}"{opacity} stroke="{color}" stroke-width="2" stroke-linejoin="round" d="{}"/>"#,
            path(w)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(0.0, 1.0),
            PlanePoint::new(-1.0, 0.0),
            PlanePoint::new(0.0, -1.0),
        ])
        .unwrap()
    }

    #[test]
    fn world_maps_to_canvas_with_y_up() {
        assert_eq!(px(PlanePoint::new(-WORLD, WORLD)), (0.0, 0.0));
        assert_eq!(px(PlanePoint::new(WORLD, -WORLD)), (CANVAS, CANVAS));
        let (_, y_up) = px(PlanePoint::new(0.0, 1.0));
        assert!(y_up < CANVAS / 2.0);
    }

    #[test]
    fn output_is_fixed_precision_and_stable() {
        let a = render(&[square()], Style::Overlay);
        assert_eq!(a, render(&[square()], Style::Overlay));
        assert!(a.contains(r#"d="M581.8182 400.0000 L400.0000 218.1818 "#), "{a}");
        assert!(a.contains("unit-circle") && a.contains(r#"r="181.8182""#));
        assert!(!a.contains("-0.0000"));
        let b = render(&[square(), square().rotated(0.3)], Style::Filled);
        assert!(b.contains("shape-1") && b.contains("fill-opacity"));
    }
}
