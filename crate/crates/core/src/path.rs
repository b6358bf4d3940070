//! Geodesic paths as sequences of chart segments and crossing events.

use crate::geom::{point_segment_distance, PlanarPoint, RigidMotion};
use crate::surface::{Adjacency, ConeKind, ConeSurface, SurfacePoint};
use crate::tolerance::{EPS_ANG, EPS_INC};
use crate::word::{HomotopyWord, Letter};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Passage of a path through a vertex class. `left` and `right` are the
/// angles swept on either side of the path at the vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConePassage {
    pub id: usize,
    pub left: f64,
    pub right: f64,
    /// Fan positions of the incoming (back-pointing) and outgoing directions.
    #[serde(default)]
    pub pos_in: f64,
    #[serde(default)]
    pub pos_out: f64,
    /// The vertex lies on the surface boundary; only the side between the
    /// two directions that avoids the boundary is a genuine angle.
    #[serde(default)]
    pub boundary: bool,
    /// Gluing letters crossed turning from the incoming to the outgoing corner.
    #[serde(default)]
    pub via: Vec<Letter>,
}

impl ConePassage {
    /// The smaller of the two side angles that exist.
    pub fn margin_angle(&self) -> f64 {
        if self.boundary {
            self.left
        } else {
            self.left.min(self.right)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PathEvent {
    Seg { a: PlanarPoint, b: PlanarPoint, tri: usize },
    Cross(Letter),
    Cone(ConePassage),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Termination {
    Length,
    ConeHit { class: usize },
    Boundary { tri: usize, edge: usize },
    Closed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPath {
    pub events: Vec<PathEvent>,
    pub start: SurfacePoint,
    pub end: SurfacePoint,
    pub closed: bool,
    pub length: f64,
    pub word: HomotopyWord,
    pub termination: Termination,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum EventDoc {
    Seg([f64; 2], [f64; 2], usize),
    Cross(String),
    Cone(ConePassage),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathDoc {
    events: Vec<EventDoc>,
    length: f64,
    closed: bool,
    word: String,
    termination: Termination,
}

impl GeodesicPath {
    /// Assemble a path from events; length and word are derived.
    pub fn from_events(
        events: Vec<PathEvent>,
        start: SurfacePoint,
        end: SurfacePoint,
        closed: bool,
        termination: Termination,
    ) -> Self {
        let mut p = Self {
            events,
            start,
            end,
            closed,
            length: 0.0,
            word: HomotopyWord::default(),
            termination,
        };
        p.recompute();
        p
    }

    pub fn recompute(&mut self) {
        self.length = geodesic_length(self);
        let mut letters = Vec::new();
        for e in &self.events {
            match e {
                PathEvent::Cross(l) => letters.push(*l),
                PathEvent::Cone(c) => letters.extend_from_slice(&c.via),
                PathEvent::Seg { .. } => {}
            }
        }
        self.word = HomotopyWord::new(letters, self.closed);
    }

    pub fn segments(&self) -> impl Iterator<Item = (PlanarPoint, PlanarPoint, usize)> + '_ {
        self.events.iter().filter_map(|e| match *e {
            PathEvent::Seg { a, b, tri } => Some((a, b, tri)),
            _ => None,
        })
    }

    pub fn passages(&self) -> impl Iterator<Item = &ConePassage> + '_ {
        self.events.iter().filter_map(|e| match e {
            PathEvent::Cone(c) => Some(c),
            _ => None,
        })
    }

    pub fn to_doc(&self, labels: &[String]) -> PathDoc {
        PathDoc {
            events: self
                .events
                .iter()
                .map(|e| match e {
                    PathEvent::Seg { a, b, tri } => EventDoc::Seg([a.x, a.y], [b.x, b.y], *tri),
                    PathEvent::Cross(l) => EventDoc::Cross(l.label(labels)),
                    PathEvent::Cone(c) => EventDoc::Cone(c.clone()),
                })
                .collect(),
            length: self.length,
            closed: self.closed,
            word: self.word.format(labels),
            termination: self.termination,
        }
    }

    pub fn to_json(&self, labels: &[String]) -> serde_json::Value {
        serde_json::to_value(self.to_doc(labels)).expect("path documents serialize")
    }

    /// Reverse traversal direction.
    pub fn reversed(&self) -> GeodesicPath {
        let events = self
            .events
            .iter()
            .rev()
            .map(|e| match e {
                PathEvent::Seg { a, b, tri } => PathEvent::Seg { a: *b, b: *a, tri: *tri },
                PathEvent::Cross(l) => PathEvent::Cross(l.inv()),
                PathEvent::Cone(c) => PathEvent::Cone(ConePassage {
                    id: c.id,
                    left: c.right,
                    right: c.left,
                    pos_in: c.pos_out,
                    pos_out: c.pos_in,
                    boundary: c.boundary,
                    via: c.via.iter().rev().map(|l| l.inv()).collect(),
                }),
            })
            .collect();
        GeodesicPath::from_events(events, self.end, self.start, self.closed, self.termination)
    }
}

/// Exact sum of chart segment lengths.
pub fn geodesic_length(path: &GeodesicPath) -> f64 {
    path.segments().map(|(a, b, _)| a.dist(b)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalGeodesicReport {
    pub straightness_residual: f64,
    /// `min(left, right) - π` over passages; `None` when there are none.
    pub worst_passage_margin: Option<f64>,
    pub continuity_residual: f64,
    pub is_local_geodesic: bool,
}

/// Motion carrying the chart of `from` into the chart of `to` across their shared edge.
pub fn crossing_motion(s: &ConeSurface, from: usize, to: usize) -> Option<RigidMotion> {
    s.triangles[from].adj.iter().find_map(|a| match *a {
        Adjacency::Interior { tri, motion, .. } if tri == to => Some(motion),
        _ => None,
    })
}

/// Motion from `from`'s chart into `to`'s chart across the edge carrying `letter`
/// (or a diagonal, when `letter` is `None`).
pub(crate) fn edge_motion(s: &ConeSurface, from: usize, to: usize, letter: Option<Letter>) -> Option<RigidMotion> {
    s.triangles[from].adj.iter().find_map(|a| match *a {
        Adjacency::Interior { tri, motion, letter: l, .. } if tri == to && l == letter => Some(motion),
        _ => None,
    })
}

pub fn check_local_geodesic(s: &ConeSurface, path: &GeodesicPath) -> LocalGeodesicReport {
    let mut straight: f64 = 0.0;
    let mut cont: f64 = 0.0;
    let mut margin: Option<f64> = None;
    let n = path.events.len();
    let mut prev: Option<(PlanarPoint, PlanarPoint, usize)> = None;
    let mut pending: Option<Letter> = None;
    let mut after_cone = false;

    let check_pair = |prev: (PlanarPoint, PlanarPoint, usize),
                          cur: (PlanarPoint, PlanarPoint, usize),
                          letter: Option<Letter>,
                          straight: &mut f64,
                          cont: &mut f64| {
        let (a, b, t0) = prev;
        let (c, d, t1) = cur;
        let m = if t0 == t1 {
            Some(RigidMotion::IDENTITY)
        } else {
            edge_motion(s, t0, t1, letter).or_else(|| crossing_motion(s, t0, t1))
        };
        let Some(m) = m else {
            *cont = f64::INFINITY;
            return;
        };
        let back = m.inverse();
        let c0 = back.apply(c);
        let d0 = back.apply(d);
        *cont = cont.max(c0.dist(b));
        let dir = b - a;
        let len = dir.norm();
        if len <= EPS_INC || d0.dist(c0) <= EPS_INC {
            return;
        }
        let u = dir * (1.0 / len);
        let w = d0 - b;
        let dev = u.cross(w).abs();
        let dev = if u.dot(w) < 0.0 { f64::INFINITY } else { dev };
        *straight = straight.max(dev);
    };

    for i in 0..n {
        match &path.events[i] {
            PathEvent::Seg { a, b, tri } => {
                let cur = (*a, *b, *tri);
                if let Some(p) = prev {
                    if !after_cone {
                        check_pair(p, cur, pending, &mut straight, &mut cont);
                    }
                }
                prev = Some(cur);
                pending = None;
                after_cone = false;
            }
            PathEvent::Cross(l) => pending = Some(*l),
            PathEvent::Cone(c) => {
                after_cone = true;
                if (c.left + c.right - s.classes[c.id].angle).abs() > 1e-6 {
                    cont = cont.max((c.left + c.right - s.classes[c.id].angle).abs());
                }
                let m = c.margin_angle() - PI;
                margin = Some(margin.map_or(m, |x: f64| x.min(m)));
            }
        }
    }
    if path.closed && !after_cone {
        let first = path.segments().next();
        if let (Some(p), Some(f)) = (prev, first) {
            check_pair(p, f, pending, &mut straight, &mut cont);
        }
    }
    let ok = straight <= EPS_INC && cont <= EPS_INC && margin.is_none_or(|m| m >= -EPS_ANG);
    LocalGeodesicReport {
        straightness_residual: straight,
        worst_passage_margin: margin,
        continuity_residual: cont,
        is_local_geodesic: ok,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Clearance {
    /// `None` when no qualifying cone point is near the path.
    pub distance: Option<f64>,
    pub witness: Option<usize>,
}

impl Clearance {
    pub fn value(&self) -> f64 {
        self.distance.unwrap_or(f64::INFINITY)
    }
}

/// Distance from the path's segments to chart copies of cone points in the
/// traversed triangles and their neighbors.
pub fn min_clearance(s: &ConeSurface, path: &GeodesicPath, small_only: bool) -> Clearance {
    let wanted = |class: usize| {
        let c = &s.classes[class];
        if small_only {
            c.kind == ConeKind::Small && !c.boundary
        } else {
            c.is_cone()
        }
    };
    let mut best: Option<(f64, usize)> = None;
    for (a, b, t) in path.segments() {
        let tri = &s.triangles[t];
        let mut cand: Vec<(PlanarPoint, usize)> = (0..3)
            .map(|k| (tri.pts[k], s.corner_class[t][k]))
            .collect();
        for adj in &tri.adj {
            if let Adjacency::Interior { tri: nt, motion, .. } = *adj {
                let back = motion.inverse();
                for k in 0..3 {
                    cand.push((back.apply(s.triangles[nt].pts[k]), s.corner_class[nt][k]));
                }
            }
        }
        for (p, class) in cand {
            if !wanted(class) {
                continue;
            }
            let d = point_segment_distance(p, a, b);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, class));
            }
        }
    }
    Clearance {
        distance: best.map(|b| b.0),
        witness: best.map(|b| b.1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::builtin;

    #[test]
    fn bent_polyline_is_not_geodesic() {
        let s = builtin("square_torus").unwrap();
        let a = PlanarPoint::new(0.2, 0.5);
        let b = PlanarPoint::new(0.5, 0.5);
        let c = b + PlanarPoint::from_angle(0.1) * 0.2;
        let t = s.locate(0, PlanarPoint::new(0.3, 0.5)).unwrap();
        let SurfacePoint::Chart { tri, .. } = t else { panic!() };
        let path = GeodesicPath::from_events(
            vec![PathEvent::Seg { a, b, tri }, PathEvent::Seg { a: b, b: c, tri }],
            SurfacePoint::Chart { tri, pos: a },
            SurfacePoint::Chart { tri, pos: c },
            false,
            Termination::Length,
        );
        let r = check_local_geodesic(&s, &path);
        assert!(r.straightness_residual > EPS_INC);
        assert!(!r.is_local_geodesic);
        assert_eq!(r.worst_passage_margin, None);
    }
}
