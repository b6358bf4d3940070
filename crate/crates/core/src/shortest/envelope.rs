use super::graph::{shortest_with, ShortestOptions};
use crate::error::Result;
use crate::geom::{point_segment_distance, segments_cross_properly, PlanarPoint};
use crate::path::GeodesicPath;
use crate::surface::{ConeSurface, SurfacePoint};
use crate::tolerance::EPS_INC;
use crate::unfolding::develop_path;
use crate::word::HomotopyWord;
use serde::Serialize;
use serde_json::json;

/// Leftmost and rightmost representatives of a class at a finite radius.
#[derive(Clone, Debug)]
pub struct ExtremalPair {
    pub left: GeodesicPath,
    pub right: GeodesicPath,
    /// All enumerated representatives, leftmost first.
    pub class_members: Vec<GeodesicPath>,
    pub length: f64,
    /// Developed polylines of the members, in the unfolding plane.
    pub developed: Vec<Vec<PlanarPoint>>,
    /// Where each member leaves the disk of radius `N` (or its end, if it stays inside).
    pub endpoints_at_radius: Vec<PlanarPoint>,
    pub y_left: PlanarPoint,
    pub y_right: PlanarPoint,
    /// Closed polygon: left path, the closing arc, then the right path reversed.
    pub envelope: Vec<PlanarPoint>,
    /// Largest distance of a developed member vertex outside the envelope.
    pub containment_residual: f64,
    /// Proper crossings of members with the left or right path inside common cells.
    pub crossings: usize,
    pub envelope_ok: bool,
    pub truncated: bool,
}

fn exit_point(pts: &[PlanarPoint], center: PlanarPoint, n: f64) -> PlanarPoint {
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.dist(center) >= n {
            // solve |a + t(b-a) - c| = n for the first t in [0, 1]
            let d = b - a;
            let f = a - center;
            let (qa, qb, qc) = (d.dot(d), 2.0 * f.dot(d), f.dot(f) - n * n);
            let disc = (qb * qb - 4.0 * qa * qc).max(0.0);
            let t = ((-qb + disc.sqrt()) / (2.0 * qa)).clamp(0.0, 1.0);
            return a.lerp(b, t);
        }
    }
    *pts.last().expect("developed path has points")
}

fn inside(poly: &[PlanarPoint], p: PlanarPoint) -> bool {
    let mut wn = false;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x > p.x {
                wn = !wn;
            }
        }
    }
    wn
}

fn boundary_distance(poly: &[PlanarPoint], p: PlanarPoint) -> f64 {
    (0..poly.len())
        .map(|i| point_segment_distance(p, poly[i], poly[(i + 1) % poly.len()]))
        .fold(f64::INFINITY, f64::min)
}

/// Enumerate the representatives of the class of `q_lift` that realize the
/// minimal length, and build their extremal pair and envelope.
pub fn class_representatives(
    s: &ConeSurface,
    p: SurfacePoint,
    q_lift: (SurfacePoint, HomotopyWord),
    n: f64,
    opts: &ShortestOptions,
) -> Result<ExtremalPair> {
    let m = shortest_with(s, p, q_lift, n, opts)?;
    let developed: Vec<Vec<PlanarPoint>> = m
        .paths
        .iter()
        .map(|path| develop_path(s, &m.tree, path).map(|d| d.points))
        .collect::<Result<_>>()?;
    let center = m.tree.base_pos;
    let xi: Vec<PlanarPoint> = developed.iter().map(|d| exit_point(d, center, n)).collect();
    let last = m.paths.len() - 1;
    let (y_left, y_right) = (xi[0], xi[last]);

    let mut envelope: Vec<PlanarPoint> = developed[0].clone();
    let on_circle = |y: PlanarPoint| (y.dist(center) - n).abs() <= EPS_INC * n.max(1.0);
    if on_circle(y_left) && on_circle(y_right) {
        // clockwise from the left end to the right end
        let a0 = (y_left - center).angle();
        let mut sweep = a0 - (y_right - center).angle();
        sweep = sweep.rem_euclid(std::f64::consts::TAU);
        if sweep > std::f64::consts::PI {
            sweep -= std::f64::consts::TAU;
        }
        for i in 1..16 {
            let a = a0 - sweep * i as f64 / 16.0;
            envelope.push(center + PlanarPoint::from_angle(a) * n);
        }
    }
    envelope.extend(developed[last].iter().rev());

    let tol = EPS_INC * n.max(1.0);
    let mut residual: f64 = 0.0;
    for d in &developed {
        for &v in d {
            if !inside(&envelope, v) {
                let dist = boundary_distance(&envelope, v);
                if dist > tol {
                    residual = residual.max(dist);
                }
            }
        }
    }
    let mut crossings = 0;
    for (i, path) in m.paths.iter().enumerate() {
        for j in [0, last] {
            if i == j {
                continue;
            }
            let segs_i: Vec<_> = path.segments().zip(&m.seg_cells[i]).collect();
            let segs_j: Vec<_> = m.paths[j].segments().zip(&m.seg_cells[j]).collect();
            for &((a, b, _), ci) in &segs_i {
                for &((c, d, _), cj) in &segs_j {
                    if ci.is_some() && ci == cj && segments_cross_properly(a, b, c, d, EPS_INC).is_some() {
                        crossings += 1;
                    }
                }
            }
        }
    }
    Ok(ExtremalPair {
        left: m.paths[0].clone(),
        right: m.paths[last].clone(),
        class_members: m.paths.clone(),
        length: m.length,
        developed,
        endpoints_at_radius: xi,
        y_left,
        y_right,
        envelope,
        containment_residual: residual,
        crossings,
        envelope_ok: residual == 0.0 && crossings == 0,
        truncated: m.truncated,
    })
}

impl ExtremalPair {
    pub fn to_json(&self, labels: &[String]) -> serde_json::Value {
        let pts = |v: &[PlanarPoint]| v.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>();
        json!({
            "length": self.length,
            "members": self.class_members.len(),
            "truncated": self.truncated,
            "left": self.left.to_json(labels),
            "right": self.right.to_json(labels),
            "class_members": self.class_members.iter().map(|p| p.to_json(labels)).collect::<Vec<_>>(),
            "endpoints_at_radius": pts(&self.endpoints_at_radius),
            "y_left": [self.y_left.x, self.y_left.y],
            "y_right": [self.y_right.x, self.y_right.y],
            "envelope": pts(&self.envelope),
            "containment_residual": self.containment_residual,
            "crossings": self.crossings,
            "envelope_ok": self.envelope_ok,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BifurcationRow {
    pub word: String,
    pub power: usize,
    pub members: usize,
    pub bifurcates: bool,
    pub length: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BifurcationReport {
    pub rows: Vec<BifurcationRow>,
    pub bifurcating: usize,
}

/// Run [`class_representatives`] on `p` and its translates along each power
/// `w^k` of the family, recording which classes have several representatives.
pub fn bifurcation_scan(
    s: &ConeSurface,
    p: SurfacePoint,
    family: &[HomotopyWord],
    k_max: usize,
    n: f64,
    opts: &ShortestOptions,
) -> BifurcationReport {
    let mut rows = Vec::new();
    for w in family {
        for k in 1..=k_max {
            let word = w.as_linear().power(k);
            let row = match class_representatives(s, p, (p, word), n, opts) {
                Ok(pair) => BifurcationRow {
                    word: w.format(&s.labels),
                    power: k,
                    members: pair.class_members.len(),
                    bifurcates: pair.class_members.len() >= 2,
                    length: Some(pair.length),
                    error: None,
                },
                Err(e) => BifurcationRow {
                    word: w.format(&s.labels),
                    power: k,
                    members: 0,
                    bifurcates: false,
                    length: None,
                    error: Some(e.to_string()),
                },
            };
            rows.push(row);
        }
    }
    let bifurcating = rows.iter().filter(|r| r.bifurcates).count();
    BifurcationReport { rows, bifurcating }
}
