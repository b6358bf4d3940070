//! Straight-line tracing across gluings.

use crate::error::{Error, Result};
use crate::fan;
use crate::geom::{line_intersection, normalize_angle, orient, PlanarPoint};
use crate::path::{GeodesicPath, PathEvent, Termination};
use crate::surface::{Adjacency, ConeKind, ConeSurface, SurfacePoint};
use crate::tolerance::EPS_INC;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Chart angle of a direction, normalized to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction(f64);

impl Direction {
    pub fn new(angle: f64) -> Self {
        Self(normalize_angle(angle))
    }

    pub fn from_vector(v: PlanarPoint) -> Self {
        Self::new(v.angle())
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    pub fn unit(self) -> PlanarPoint {
        PlanarPoint::from_angle(self.0)
    }
}

const MAX_SEGMENTS: usize = 1_000_000;

/// Push a point lying on a glued edge of `tri` through the gluing.
pub fn cross_edge(
    s: &ConeSurface,
    tri: usize,
    p: PlanarPoint,
    v: Direction,
) -> Result<(usize, PlanarPoint, Direction)> {
    let t = &s.triangles[tri];
    let e = s
        .edge_at(tri, p)
        .ok_or_else(|| Error::InvalidArgument(format!("{p:?} is not on an edge of triangle {tri}")))?;
    let (a, b) = t.edge(e);
    if orient(a, b, p + v.unit()) >= 0.0 {
        return Err(Error::InvalidArgument("direction does not leave the triangle".into()));
    }
    match t.adj[e] {
        Adjacency::Boundary => Err(Error::BoundaryHit { tri, edge: e }),
        Adjacency::Interior { tri: nt, motion, .. } => Ok((
            nt,
            motion.apply(p),
            Direction::from_vector(motion.apply_vector(v.unit())),
        )),
    }
}

/// Where a straight ray leaves a triangle.
enum Exit {
    Edge(usize, f64),
    Corner(usize, f64),
}

fn exit_of(s: &ConeSurface, tri: usize, pos: PlanarPoint, d: PlanarPoint, skip: &[usize]) -> Option<Exit> {
    let t = &s.triangles[tri];
    let mut best: Option<(usize, f64, f64)> = None;
    for e in 0..3 {
        if skip.contains(&e) {
            continue;
        }
        let (a, b) = t.edge(e);
        if let Some((sr, te)) = line_intersection(pos, pos + d, a, b) {
            if sr > 1e-12 && (-1e-9..=1.0 + 1e-9).contains(&te) && best.is_none_or(|x| sr < x.1) {
                best = Some((e, sr, te));
            }
        }
    }
    let (e, sr, _) = best?;
    let q = pos + d * sr;
    for k in 0..3 {
        if t.pts[k].dist(q) <= EPS_INC {
            return Some(Exit::Corner(k, pos.dist(t.pts[k])));
        }
    }
    Some(Exit::Edge(e, sr))
}

/// Trace the straight geodesic from `p` in direction `v` for length `len`.
/// Stops early at cone points and boundary edges. Regular interior vertices
/// are passed straight through.
pub fn trace_ray(s: &ConeSurface, p: SurfacePoint, v: Direction, len: f64) -> Result<GeodesicPath> {
    if !(len > 0.0) {
        return Err(Error::InvalidArgument("trace length must be positive".into()));
    }
    let SurfacePoint::Chart { tri, pos } = p else {
        return Err(Error::StartOnCone);
    };
    if s.corner_at(tri, pos).is_some() {
        return Err(Error::StartOnCone);
    }
    let mut t = tri;
    let mut pos = pos;
    let mut d = v.unit();
    let mut skip: Vec<usize> = Vec::new();
    if let Some(e) = s.edge_at(tri, pos) {
        let (a, b) = s.triangles[tri].edge(e);
        if orient(a, b, pos + d) <= 0.0 {
            // pointing out through the edge we sit on: start in the neighbor
            let (nt, np, nv) = cross_edge(s, tri, pos, v)?;
            let mut events = Vec::new();
            if let Adjacency::Interior { letter: Some(l), .. } = s.triangles[tri].adj[e] {
                events.push(PathEvent::Cross(l));
            }
            let rest = trace_ray(s, SurfacePoint::Chart { tri: nt, pos: np }, nv, len)?;
            events.extend(rest.events);
            return Ok(GeodesicPath::from_events(events, p, rest.end, false, rest.termination));
        }
        skip.push(e);
    }
    let mut remaining = len;
    let mut events = Vec::new();
    for _ in 0..MAX_SEGMENTS {
        let exit = exit_of(s, t, pos, d, &skip)
            .ok_or_else(|| Error::Geometry(format!("ray lost inside triangle {t}")))?;
        let dist = match exit {
            Exit::Edge(_, sr) => sr,
            Exit::Corner(_, sr) => sr,
        };
        if remaining <= dist {
            let q = pos + d * remaining;
            events.push(PathEvent::Seg { a: pos, b: q, tri: t });
            let end = SurfacePoint::Chart { tri: t, pos: q };
            return Ok(GeodesicPath::from_events(events, p, end, false, Termination::Length));
        }
        remaining -= dist;
        match exit {
            Exit::Corner(k, _) => {
                let q = s.triangles[t].pts[k];
                events.push(PathEvent::Seg { a: pos, b: q, tri: t });
                let class = s.corner_class[t][k];
                let c = &s.classes[class];
                if c.kind != ConeKind::Regular || c.boundary {
                    let end = SurfacePoint::Vertex { class };
                    return Ok(GeodesicPath::from_events(
                        events,
                        p,
                        end,
                        false,
                        Termination::ConeHit { class },
                    ));
                }
                let pos_in = fan::position_of(s, t, k, -d);
                let pos_out = pos_in + PI;
                let (nt, nk, nd) = fan::direction_at(s, class, pos_out);
                events.push(PathEvent::Cone(fan::passage(s, class, pos_in, pos_out)));
                t = nt;
                pos = s.triangles[nt].pts[nk];
                d = nd;
                skip = vec![nk, (nk + 2) % 3];
            }
            Exit::Edge(e, sr) => {
                let q = pos + d * sr;
                events.push(PathEvent::Seg { a: pos, b: q, tri: t });
                match s.triangles[t].adj[e] {
                    Adjacency::Boundary => {
                        let end = SurfacePoint::Chart { tri: t, pos: q };
                        return Ok(GeodesicPath::from_events(
                            events,
                            p,
                            end,
                            false,
                            Termination::Boundary { tri: t, edge: e },
                        ));
                    }
                    Adjacency::Interior { tri: nt, edge: ne, letter, motion } => {
                        if let Some(l) = letter {
                            events.push(PathEvent::Cross(l));
                        }
                        pos = motion.apply(q);
                        d = motion.apply_vector(d);
                        t = nt;
                        skip = vec![ne];
                    }
                }
            }
        }
    }
    Err(Error::ResourceCap(format!("trace exceeded {MAX_SEGMENTS} segments")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::check_local_geodesic;
    use crate::surface::builtin;

    fn chart(s: &ConeSurface, poly: usize, x: f64, y: f64) -> SurfacePoint {
        s.locate(poly, PlanarPoint::new(x, y)).unwrap()
    }

    #[test]
    fn torus_right_edge_crossing() {
        let s = builtin("square_torus").unwrap();
        let p = PlanarPoint::new(1.0, 0.5);
        let tri = (0..s.triangles.len())
            .find(|&t| s.edge_at(t, p).is_some_and(|e| s.triangles[t].adj[e].neighbor().is_some()
                && { let (a, b) = s.triangles[t].edge(e); (a.x - 1.0).abs() < 1e-12 && (b.x - 1.0).abs() < 1e-12 }))
            .unwrap();
        let (_, q, v) = cross_edge(&s, tri, p, Direction::new(0.0)).unwrap();
        assert!(q.dist(PlanarPoint::new(0.0, 0.5)) < 1e-12);
        assert!(v.angle().abs() < 1e-12 || (v.angle() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn torus_horizontal_orbit() {
        let s = builtin("square_torus").unwrap();
        let p = chart(&s, 0, 0.5, 0.5);
        let path = trace_ray(&s, p, Direction::new(0.0), 3.0).unwrap();
        assert!((path.length - 3.0).abs() < 1e-12);
        assert_eq!(path.word.format(&s.labels), "a a a");
        assert!(check_local_geodesic(&s, &path).is_local_geodesic);
    }

    #[test]
    fn torus_lattice_direction_returns() {
        let s = builtin("square_torus").unwrap();
        let p = chart(&s, 0, 0.5, 0.5);
        let path = trace_ray(&s, p, Direction::new(1f64.atan2(2.0)), 5f64.sqrt()).unwrap();
        let SurfacePoint::Chart { pos, .. } = path.end else { panic!() };
        assert!(pos.dist(PlanarPoint::new(0.5, 0.5)) < 1e-9);
        assert_eq!(path.word.format(&s.labels), "a b a");
    }

    #[test]
    fn boundary_edge_crossing_errors() {
        let s = builtin("example_sigma").unwrap();
        // CE of the upper hexagon is boundary
        let p = PlanarPoint::new(1.5, 2.5);
        let tri = (0..s.triangles.len())
            .find(|&t| s.triangles[t].polygon == 0 && s.edge_at(t, p).is_some())
            .unwrap();
        let r = cross_edge(&s, tri, p, Direction::new(PI / 4.0));
        assert!(matches!(r, Err(Error::BoundaryHit { .. })));
    }

    #[test]
    fn start_on_cone_is_rejected() {
        let s = builtin("example_sigma").unwrap();
        let r = trace_ray(&s, SurfacePoint::Vertex { class: 0 }, Direction::new(0.0), 1.0);
        assert!(matches!(r, Err(Error::StartOnCone)));
    }
}
