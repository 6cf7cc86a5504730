//! SVG rendering of constructions: the absolute, the polygon, each
//! construction line clipped to the canvas, and the meet points, with fixed
//! element ids for figure regression tests.

use kleinbary::constructions::ConstructionReport;
use kleinbary::klein::Line;
use kleinbary::{IdealPolygon, PlanePoint};
use std::fmt::Write;

const CANVAS: f64 = 1000.0;
/// Drawing region in model coordinates: the unit disk with a 5% margin.
const EXTENT: f64 = 1.05;

fn px(x: f64) -> f64 {
    (x + EXTENT) / (2.0 * EXTENT) * CANVAS
}

fn py(y: f64) -> f64 {
    (EXTENT - y) / (2.0 * EXTENT) * CANVAS
}

/// Clip the infinite line to the square [-EXTENT, EXTENT]²; `None` when it
/// misses the canvas.
fn clip_line(line: &Line) -> Option<(PlanePoint, PlanePoint)> {
    let mut hits: Vec<PlanePoint> = Vec::new();
    let e = EXTENT;
    // intersections with x = ±e and y = ±e
    if line.v.abs() > 1e-12 {
        for x in [-e, e] {
            let y = -(line.u * x + line.w) / line.v;
            if y.abs() <= e + 1e-9 {
                hits.push(PlanePoint::new(x, y));
            }
        }
    }
    if line.u.abs() > 1e-12 {
        for y in [-e, e] {
            let x = -(line.v * y + line.w) / line.u;
            if x.abs() <= e + 1e-9 {
                hits.push(PlanePoint::new(x, y));
            }
        }
    }
    hits.dedup_by(|a, b| a.dist(b) < 1e-9);
    if hits.len() < 2 {
        return None;
    }
    // take the farthest pair to span the whole canvas segment
    let mut best = (hits[0], hits[1]);
    let mut best_d = 0.0;
    for i in 0..hits.len() {
        for j in (i + 1)..hits.len() {
            let d = hits[i].dist(&hits[j]);
            if d > best_d {
                best_d = d;
                best = (hits[i], hits[j]);
            }
        }
    }
    Some(best)
}

/// Render a polygon and its construction reports.
pub fn render(poly: &IdealPolygon, reports: &[ConstructionReport], labels: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {CANVAS} {CANVAS}" width="{CANVAS}" height="{CANVAS}">"#
    );
    let _ = writeln!(
        out,
        r#"  <rect width="{CANVAS}" height="{CANVAS}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"  <circle id="absolute" cx="{}" cy="{}" r="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        px(0.0),
        py(0.0),
        CANVAS / (2.0 * EXTENT)
    );

    let pts: Vec<String> = poly
        .vertices()
        .iter()
        .map(|v| {
            let e = v.embed();
            format!("{:.3},{:.3}", px(e.x), py(e.y))
        })
        .collect();
    let _ = writeln!(
        out,
        r##"  <polygon id="polygon" points="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
        pts.join(" ")
    );

    let palette = [
        "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
    ];
    for (ri, report) in reports.iter().enumerate() {
        let color = palette[ri % palette.len()];
        for (li, labeled) in report.lines.iter().enumerate() {
            if let Some((a, b)) = clip_line(&labeled.line) {
                let _ = writeln!(
                    out,
                    r#"  <line id="line-{ri}-{li}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{color}" stroke-width="1"/>"#,
                    px(a.x),
                    py(a.y),
                    px(b.x),
                    py(b.y)
                );
                if labels {
                    let _ = writeln!(
                        out,
                        r#"  <text id="label-{ri}-{li}" x="{:.3}" y="{:.3}" font-size="18" fill="{color}">{}</text>"#,
                        px((a.x + b.x) / 2.0),
                        py((a.y + b.y) / 2.0),
                        labeled.label
                    );
                }
            }
        }
        let _ = writeln!(
            out,
            r#"  <circle id="meet-{ri}" cx="{:.3}" cy="{:.3}" r="5" fill="{color}"/>"#,
            px(report.meet.x),
            py(report.meet.y)
        );
    }
    out.push_str("</svg>\n");
    out
}
