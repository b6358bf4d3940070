use super::UnfoldingTree;
use crate::geom::PlanarPoint;
use crate::surface::ConeSurface;
use std::fmt::Write;

const PALETTE: [&str; 6] = ["#dbe9f6", "#f6e3db", "#e2f3dd", "#efe0f4", "#f5f1d2", "#dcf1f0"];

/// A developed polyline to draw over the cells.
#[derive(Clone, Debug)]
pub struct SvgPath {
    pub points: Vec<PlanarPoint>,
    pub color: String,
    pub label: Option<String>,
}

/// A labelled point, e.g. a vertex lift.
#[derive(Clone, Debug)]
pub struct SvgMark {
    pub at: PlanarPoint,
    pub color: String,
    pub label: Option<String>,
}

fn f(x: f64) -> String {
    let v = (x * 1e4).round() / 1e4;
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v}")
    }
}

/// Render the unfolding as a standalone SVG document. Output depends only on
/// the inputs, so it can be compared byte for byte.
pub fn render_svg(s: &ConeSurface, tree: &UnfoldingTree, paths: &[SvgPath], marks: &[SvgMark]) -> String {
    let mut lo = PlanarPoint::new(f64::INFINITY, f64::INFINITY);
    let mut hi = PlanarPoint::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |p: PlanarPoint| {
        lo = PlanarPoint::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = PlanarPoint::new(hi.x.max(p.x), hi.y.max(p.y));
    };
    let tris: Vec<[PlanarPoint; 3]> = (0..tree.cells.len()).map(|c| tree.developed_triangle(s, c)).collect();
    tris.iter().flatten().for_each(|&p| grow(p));
    paths.iter().flat_map(|p| p.points.iter()).for_each(|&p| grow(p));
    marks.iter().for_each(|m| grow(m.at));
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
    let pad = 0.03 * span;
    let scale = 800.0 / (span + 2.0 * pad);
    let w = (hi.x - lo.x + 2.0 * pad) * scale;
    let h = (hi.y - lo.y + 2.0 * pad) * scale;
    // flip y so the picture has the usual orientation
    let tx = |p: PlanarPoint| ((p.x - lo.x + pad) * scale, (hi.y - p.y + pad) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f(w),
        f(h),
        f(w),
        f(h)
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(out, r##"<g stroke="#8a8a8a" stroke-width="0.5">"##);
    for (c, t) in tris.iter().enumerate() {
        let poly = s.triangles[tree.cells[c].source].polygon;
        let pts: Vec<String> = t
            .iter()
            .map(|&p| {
                let (x, y) = tx(p);
                format!("{},{}", f(x), f(y))
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{}"><title>{} {}</title></polygon>"#,
            pts.join(" "),
            PALETTE[poly % PALETTE.len()],
            c,
            tree.cells[c].word.format(&s.labels)
        );
    }
    let _ = writeln!(out, "</g>");
    for p in paths {
        let pts: Vec<String> = p
            .points
            .iter()
            .map(|&q| {
                let (x, y) = tx(q);
                format!("{},{}", f(x), f(y))
            })
            .collect();
        let _ = write!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2">"#,
            pts.join(" "),
            p.color
        );
        if let Some(l) = &p.label {
            let _ = write!(out, "<title>{l}</title>");
        }
        let _ = writeln!(out, "</polyline>");
    }
    for m in marks {
        let (x, y) = tx(m.at);
        let _ = write!(out, r#"<circle cx="{}" cy="{}" r="3" fill="{}">"#, f(x), f(y), m.color);
        if let Some(l) = &m.label {
            let _ = write!(out, "<title>{l}</title>");
        }
        let _ = writeln!(out, "</circle>");
    }
    let (bx, by) = tx(tree.base_pos);
    let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="4" fill="#000000"/>"##, f(bx), f(by));
    out.push_str("</svg>\n");
    out
}
