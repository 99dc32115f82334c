//! Static SVG figures of point sets, highlighted hulls and extraction traces.
//! Output is byte-deterministic for fixed input.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geom::{convex_hull, ConvexRegion, Point};
use crate::kgon::PointSet;
use crate::scalar::Scalar;

const CANVAS_WIDTH: f64 = 600.0;
const MARGIN: f64 = 24.0;
const POINT_RADIUS: f64 = 5.0;
const DOMAIN_STROKE: &str = "#000000";
const POINT_FILL: &str = "#3355cc";
const HULL_FILL: &str = "#e0443e";
const TRACE_FILL: &str = "#2a9d8f";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RenderOptions {
    /// Indices whose hull is highlighted.
    pub subset: Option<Vec<usize>>,
    /// Nested extraction regions, outermost first.
    pub trace_regions: Vec<ConvexRegion<f64>>,
}

struct Viewport {
    scale: f64,
    height: f64,
    min_x: f64,
    min_y: f64,
}

impl Viewport {
    fn map(&self, p: &Point<f64>) -> (f64, f64) {
        let x = MARGIN + (p.x - self.min_x) * self.scale;
        // y axis points up in the domain
        let y = MARGIN + self.height - (p.y - self.min_y) * self.scale;
        (x, y)
    }
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn polygon(out: &mut String, vp: &Viewport, region: &ConvexRegion<f64>, style: &str) {
    let pts: Vec<String> = region
        .vertices()
        .iter()
        .map(|p| {
            let (x, y) = vp.map(p);
            format!("{},{}", fmt_num(x), fmt_num(y))
        })
        .collect();
    match pts.len() {
        0 => {}
        1 | 2 => {
            let _ = writeln!(out, r#"  <polyline points="{}" {style}/>"#, pts.join(" "));
        }
        _ => {
            let _ = writeln!(out, r#"  <polygon points="{}" {style}/>"#, pts.join(" "));
        }
    }
}

/// Renders the domain outline, the points, and optional overlays. The domain
/// is mapped onto a 600 px wide canvas keeping its aspect ratio.
pub fn render_svg<T: Scalar>(ps: &PointSet<T>, opts: &RenderOptions) -> Result<String> {
    let ps = ps.to_float()?;
    let domain = ps.domain().as_region();
    let verts = domain.vertices();
    let min_x = verts.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let max_x = verts.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = verts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let max_y = verts.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    let scale = CANVAS_WIDTH / (max_x - min_x);
    let height = (max_y - min_y) * scale;
    let vp = Viewport { scale, height, min_x, min_y };
    let total_w = CANVAS_WIDTH + 2.0 * MARGIN;
    let total_h = height + 2.0 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = fmt_num(total_w),
        h = fmt_num(total_h)
    );
    let _ = writeln!(out, r##"  <rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##, fmt_num(total_w), fmt_num(total_h));

    let levels = opts.trace_regions.len();
    for (i, region) in opts.trace_regions.iter().enumerate() {
        let opacity = 0.08 + 0.32 * (i + 1) as f64 / levels as f64;
        let style = format!(
            r#"fill="{TRACE_FILL}" fill-opacity="{}" stroke="{TRACE_FILL}" stroke-width="1""#,
            fmt_num(opacity)
        );
        polygon(&mut out, &vp, region, &style);
    }

    polygon(&mut out, &vp, &domain, &format!(r#"fill="none" stroke="{DOMAIN_STROKE}" stroke-width="2""#));

    if let Some(subset) = &opts.subset {
        if let Some(&bad) = subset.iter().find(|&&i| i >= ps.len()) {
            return Err(Error::Invalid(format!("subset index {bad} out of range")));
        }
        if !subset.is_empty() {
            let pts: Vec<_> = subset.iter().map(|&i| ps.points()[i]).collect();
            let hull = convex_hull(&pts)?;
            polygon(
                &mut out,
                &vp,
                &hull,
                &format!(r#"fill="{HULL_FILL}" fill-opacity="0.35" stroke="{HULL_FILL}" stroke-width="2""#),
            );
        }
    }

    for (i, p) in ps.points().iter().enumerate() {
        let (x, y) = vp.map(p);
        let _ = writeln!(
            out,
            r#"  <circle id="p{i}" cx="{}" cy="{}" r="{}" fill="{POINT_FILL}"/>"#,
            fmt_num(x),
            fmt_num(y),
            fmt_num(POINT_RADIUS)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::grid_config;
    use crate::scalar::Rational;

    #[test]
    fn nine_point_figure() {
        let g = grid_config(3, 4, Rational::from_ratio(1, 1)).unwrap();
        let svg = render_svg(&g.points, &RenderOptions::default()).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<circle").count(), 9);
        assert!(svg.contains(r#"width="648" height="648""#));
        // corner (0, 0) maps to the lower-left of the canvas
        assert!(svg.contains(r#"cx="24" cy="624""#));
        assert_eq!(svg, render_svg(&g.points, &RenderOptions::default()).unwrap());
    }

    #[test]
    fn aspect_preserved() {
        let g = grid_config(2, 4, Rational::from_ratio(1, 2)).unwrap();
        let svg = render_svg(&g.points, &RenderOptions::default()).unwrap();
        // [0, 1/2] x [0, 2]: 600 wide, 2400 tall
        assert!(svg.contains(r#"width="648" height="2448""#));
    }

    #[test]
    fn overlays() {
        let g = grid_config(2, 4, Rational::from_ratio(1, 1)).unwrap();
        let opts = RenderOptions {
            subset: Some(vec![0, 1, 3, 4]),
            trace_regions: vec![ConvexRegion::rectangle(1.0, 1.0), ConvexRegion::rectangle(0.5, 1.0)],
        };
        let svg = render_svg(&g.points, &opts).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 4);
        assert!(svg.contains(HULL_FILL));
        let bad = RenderOptions { subset: Some(vec![9]), ..RenderOptions::default() };
        assert!(render_svg(&g.points, &bad).is_err());
    }
}
