//! Checks on geodesics near cone points: where class members meet, and how close loops come to small cones.

use crate::closed::{closed_with, ClosedOptions};
use crate::error::Result;
use crate::geom::{line_intersection, project_param, PlanarPoint};
use crate::path::{min_clearance, GeodesicPath};
use crate::surface::{ConeSurface, SurfacePoint};
use crate::unfolding::{develop_path, unfold_with, UnfoldOptions, UnfoldingTree};
use crate::word::HomotopyWord;
use serde::Serialize;
use std::f64::consts::PI;

const TOL: f64 = 1e-7;

/// A place where two developed paths meet: arc-length ranges on each.
#[derive(Clone, Copy, Debug)]
struct Meet {
    p: (f64, f64),
    q: (f64, f64),
}

struct Pieces {
    /// Cell, local endpoints, arc length at the start of the piece.
    items: Vec<(usize, PlanarPoint, PlanarPoint, f64)>,
    length: f64,
}

impl Pieces {
    fn new(s: &ConeSurface, tree: &UnfoldingTree, path: &GeodesicPath) -> Result<Self> {
        let dev = develop_path(s, tree, path)?;
        let mut items = Vec::new();
        let mut at = 0.0;
        for ((a, b, _), &c) in path.segments().zip(&dev.cells) {
            items.push((c, a, b, at));
            at += a.dist(b);
        }
        Ok(Self { items, length: at })
    }

    /// Corner lifts at piece ends with the arc length where they occur.
    fn corners(&self, s: &ConeSurface, tree: &UnfoldingTree) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        for &(c, a, b, at) in &self.items {
            let src = tree.cells[c].source;
            for (x, t) in [(a, at), (b, at + a.dist(b))] {
                if let Some(k) = s.corner_at(src, x) {
                    out.push((tree.corner_lift[c][k], t));
                }
            }
        }
        out
    }

    /// Vertex class of the point at arc length `t`, if it is a corner.
    fn class_at(&self, s: &ConeSurface, tree: &UnfoldingTree, t: f64) -> Option<usize> {
        self.items.iter().find_map(|&(c, a, b, at)| {
            let len = a.dist(b);
            if t < at - TOL || t > at + len + TOL {
                return None;
            }
            let x = a.lerp(b, ((t - at) / len).clamp(0.0, 1.0));
            let src = tree.cells[c].source;
            s.corner_at(src, x).map(|k| s.corner_class[src][k])
        })
    }
}

fn meets(s: &ConeSurface, tree: &UnfoldingTree, p: &Pieces, q: &Pieces) -> Vec<Meet> {
    let mut out = Vec::new();
    for &(c, a, b, sa) in &p.items {
        let lp = a.dist(b);
        for &(c2, r, u, sr) in &q.items {
            if c != c2 {
                continue;
            }
            let lq = r.dist(u);
            let d = b - a;
            if d.cross(u - r).abs() <= 1e-9 * lp * lq {
                // parallel: overlap only if collinear
                if d.cross(r - a).abs() > TOL * lp {
                    continue;
                }
                let (t0, t1) = (project_param(r, a, b), project_param(u, a, b));
                let (lo, hi) = (t0.min(t1).max(0.0), t0.max(t1).min(1.0));
                if hi * lp < lo * lp - TOL {
                    continue;
                }
                let x0 = a.lerp(b, lo);
                let x1 = a.lerp(b, hi);
                let (y0, y1) = (project_param(x0, r, u) * lq, project_param(x1, r, u) * lq);
                out.push(Meet {
                    p: (sa + lo * lp, sa + hi * lp),
                    q: (sr + y0.min(y1), sr + y0.max(y1)),
                });
                continue;
            }
            let Some((x, y)) = line_intersection(a, b, r, u) else { continue };
            let (ex, ey) = (TOL / lp, TOL / lq);
            if x < -ex || x > 1.0 + ex || y < -ey || y > 1.0 + ey {
                continue;
            }
            let (sp, sq) = (sa + x.clamp(0.0, 1.0) * lp, sr + y.clamp(0.0, 1.0) * lq);
            out.push(Meet { p: (sp, sp), q: (sq, sq) });
        }
    }
    // meetings at a vertex lift approached from different cells
    for (l, sp) in p.corners(s, tree) {
        for &(l2, sq) in q.corners(s, tree).iter() {
            if l == l2 {
                out.push(Meet { p: (sp, sp), q: (sq, sq) });
            }
        }
    }
    out
}

/// Connected pieces of the common set, ordered along the first path.
fn components(mut m: Vec<Meet>) -> Vec<Meet> {
    m.sort_by(|x, y| x.p.0.total_cmp(&y.p.0));
    let mut out: Vec<Meet> = Vec::new();
    for x in m {
        match out.last_mut() {
            Some(last) if x.p.0 <= last.p.1 + TOL => {
                last.p.1 = last.p.1.max(x.p.1);
                last.q.0 = last.q.0.min(x.q.0);
                last.q.1 = last.q.1.max(x.q.1);
            }
            _ => out.push(x),
        }
    }
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BigonReport {
    pub pairs: usize,
    /// Pairs of consecutive common points bounding two distinct arcs.
    pub bigons: usize,
    /// Bigon corners checked (path ends excluded).
    pub corners_checked: usize,
    pub counterexamples: Vec<String>,
}

impl BigonReport {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn merge(&mut self, o: BigonReport) {
        self.pairs += o.pairs;
        self.bigons += o.bigons;
        self.corners_checked += o.corners_checked;
        self.counterexamples.extend(o.counterexamples);
    }
}

/// Check that whenever two of the given paths from `base` meet twice, the
/// two meeting points are cone points of angle above 2π.
///
/// Common end points of the paths are not judged: the argument only applies
/// where both geodesics continue past the meeting point.
pub fn bigon_check(s: &ConeSurface, base: SurfacePoint, paths: &[GeodesicPath]) -> Result<BigonReport> {
    let radius = paths.iter().map(|p| p.length).fold(0.0, f64::max) + s.diameter();
    let tree = unfold_with(s, base, radius, UnfoldOptions::default())?;
    let pieces = paths.iter().map(|p| Pieces::new(s, &tree, p)).collect::<Result<Vec<_>>>()?;
    let mut rep = BigonReport::default();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            rep.pairs += 1;
            let (p, q) = (&pieces[i], &pieces[j]);
            let comps = components(meets(s, &tree, p, q));
            let at_end = |t: f64, u: f64| t <= TOL || t >= p.length - TOL || u <= TOL || u >= q.length - TOL;
            for w in comps.windows(2) {
                rep.bigons += 1;
                for (t, u) in [(w[0].p.1, w[0].q.1), (w[1].p.0, w[1].q.0)] {
                    if at_end(t, u) {
                        continue;
                    }
                    rep.corners_checked += 1;
                    let angle = p.class_at(s, &tree, t).map(|c| s.classes[c].angle);
                    if angle.is_none_or(|a| a <= 2.0 * PI + 1e-9) {
                        rep.counterexamples.push(format!(
                            "paths {i} and {j} meet twice; the point at arc length {t:.9} has angle {angle:?}"
                        ));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Smallest distance from the closed geodesics of `words` to small cone points.
pub fn empirical_clearance(s: &ConeSurface, words: &[HomotopyWord], opts: &ClosedOptions) -> Result<f64> {
    let mut c = f64::INFINITY;
    for w in words {
        for p in &closed_with(s, w, opts)?.paths {
            c = c.min(min_clearance(s, p, true).value());
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests;
