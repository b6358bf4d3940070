//! Euclidean cone surfaces presented as glued polygon complexes.
//!
//! A [`ConeSurface`] is immutable once built. Construction validates the
//! polygons and gluings, triangulates every polygon by ear clipping and
//! groups triangle corners into vertex classes with a union-find over the
//! corner adjacency induced by shared edges.

mod builtin;
mod schema;
mod triangulate;
mod validate;

pub use builtin::{builtin, BUILTIN_NAMES};
pub use schema::{parse_surface, GluingDoc, PolygonDoc, SurfaceDoc};
pub use triangulate::ear_clip;
pub use validate::{validate_surface, ValidationReport};

use crate::error::{Error, Result};
use crate::geom::{
    ccw_sweep, corner_angle, point_in_triangle, point_segment_distance, polygon_signed_area,
    segment_segment_distance, PlanarPoint, RigidMotion, TAU,
};
use crate::tolerance::{EPS_ANG, EPS_INC, EPS_LEN};
use crate::word::{default_label, Letter};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    pub id: String,
    pub vertices: Vec<PlanarPoint>,
}

impl Polygon {
    pub fn edge(&self, i: usize) -> (PlanarPoint, PlanarPoint) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edge_len(&self, i: usize) -> f64 {
        let (a, b) = self.edge(i);
        a.dist(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub polygon: usize,
    pub edge: usize,
}

/// Identification of two polygon edges with opposite orientations.
/// `motion` carries `side_b`'s chart onto `side_a`'s chart.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeGluing {
    pub label: String,
    pub side_a: EdgeRef,
    pub side_b: EdgeRef,
    pub motion: RigidMotion,
    pub length_residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Adjacency {
    Boundary,
    /// Neighbor across the edge. `motion` maps this triangle's chart into the
    /// neighbor's; `letter` is set when the edge is a glued polygon edge.
    Interior {
        tri: usize,
        edge: usize,
        letter: Option<Letter>,
        motion: RigidMotion,
    },
}

impl Adjacency {
    pub fn neighbor(&self) -> Option<(usize, usize)> {
        match *self {
            Adjacency::Boundary => None,
            Adjacency::Interior { tri, edge, .. } => Some((tri, edge)),
        }
    }
}

/// Triangle of the refined complex. Edge `i` runs from corner `i` to `i+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    pub polygon: usize,
    pub vertex_ids: [usize; 3],
    pub pts: [PlanarPoint; 3],
    pub adj: [Adjacency; 3],
}

impl Triangle {
    pub fn edge(&self, i: usize) -> (PlanarPoint, PlanarPoint) {
        (self.pts[i % 3], self.pts[(i + 1) % 3])
    }

    pub fn area(&self) -> f64 {
        polygon_signed_area(&self.pts)
    }

    pub fn corner_angle(&self, k: usize) -> f64 {
        corner_angle(self.pts[(k + 2) % 3], self.pts[k], self.pts[(k + 1) % 3])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeKind {
    Small,
    Regular,
    Large,
}

/// A vertex class of the complex together with its total angle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConePoint {
    pub class_id: usize,
    /// `(polygon index, vertex index)` members.
    pub members: Vec<(usize, usize)>,
    /// Triangle corners `(triangle, corner)` in counter-clockwise fan order.
    /// For boundary vertices the fan starts at the corner adjacent to the
    /// clockwise-side boundary edge.
    pub fan: Vec<(usize, usize)>,
    /// Angular position at which each fan corner starts.
    pub fan_offsets: Vec<f64>,
    pub angle: f64,
    pub kind: ConeKind,
    pub boundary: bool,
}

impl ConePoint {
    pub fn is_cone(&self) -> bool {
        self.kind != ConeKind::Regular
    }

    pub fn fan_index(&self, tri: usize, corner: usize) -> Option<usize> {
        self.fan.iter().position(|&c| c == (tri, corner))
    }
}

/// Location on the surface: a point in a triangle chart, or a vertex class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfacePoint {
    Chart { tri: usize, pos: PlanarPoint },
    Vertex { class: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub boundary_components: usize,
    pub genus: i64,
}

#[derive(Clone, Debug)]
pub struct ConeSurface {
    pub name: Option<String>,
    pub polygons: Vec<Polygon>,
    pub gluings: Vec<EdgeGluing>,
    pub labels: Vec<String>,
    pub triangles: Vec<Triangle>,
    /// Class id of every triangle corner.
    pub corner_class: Vec<[usize; 3]>,
    pub classes: Vec<ConePoint>,
    pub topology: Topology,
    /// For each polygon, for each polygon edge, the `(triangle, edge)` carrying it.
    pub polygon_edge_tri: Vec<Vec<(usize, usize)>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn check_polygon(p: &Polygon) -> Result<()> {
    let n = p.vertices.len();
    if n < 3 {
        return Err(Error::Geometry(format!("polygon `{}` has fewer than 3 vertices", p.id)));
    }
    if let Some(v) = p.vertices.iter().find(|v| !v.is_finite()) {
        return Err(Error::Geometry(format!("polygon `{}` has non-finite vertex {v:?}", p.id)));
    }
    for i in 0..n {
        for j in i + 1..n {
            if p.vertices[i].dist(p.vertices[j]) <= EPS_INC {
                return Err(Error::Geometry(format!(
                    "polygon `{}` repeats vertex {i} at {j}",
                    p.id
                )));
            }
        }
    }
    if polygon_signed_area(&p.vertices) <= 0.0 {
        return Err(Error::Geometry(format!("polygon `{}` is not positively oriented", p.id)));
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            let (a0, a1) = p.edge(i);
            let (b0, b1) = p.edge(j);
            if segment_segment_distance(a0, a1, b0, b1) <= EPS_INC {
                return Err(Error::Geometry(format!(
                    "polygon `{}` is not simple: edges {i} and {j} meet",
                    p.id
                )));
            }
        }
    }
    // Adjacent edges must not fold onto each other; with the previous checks the
    // interior angles then sum to (n-2)π exactly for a simple ccw polygon.
    let total: f64 = (0..n)
        .map(|i| {
            let prev = p.vertices[(i + n - 1) % n];
            let cur = p.vertices[i];
            let next = p.vertices[(i + 1) % n];
            ccw_sweep(next - cur, prev - cur)
        })
        .sum();
    if (total - (n as f64 - 2.0) * PI).abs() > 1e-6 {
        return Err(Error::Geometry(format!("polygon `{}` is not simple", p.id)));
    }
    Ok(())
}

impl ConeSurface {
    /// Build and validate a surface from polygons and gluing pairs `(side_a, side_b)`.
    pub fn new(
        name: Option<String>,
        polygons: Vec<Polygon>,
        gluing_pairs: Vec<(EdgeRef, EdgeRef)>,
    ) -> Result<Self> {
        if polygons.is_empty() {
            return Err(Error::Topology("surface has no polygons".into()));
        }
        for (i, p) in polygons.iter().enumerate() {
            if polygons[..i].iter().any(|q| q.id == p.id) {
                return Err(Error::Schema(format!("duplicate polygon id `{}`", p.id)));
            }
            check_polygon(p)?;
        }

        let mut used = std::collections::HashSet::new();
        let mut gluings = Vec::with_capacity(gluing_pairs.len());
        for (gi, (a, b)) in gluing_pairs.into_iter().enumerate() {
            for side in [a, b] {
                let poly = polygons
                    .get(side.polygon)
                    .ok_or_else(|| Error::Schema(format!("gluing {gi}: no polygon {}", side.polygon)))?;
                if side.edge >= poly.vertices.len() {
                    return Err(Error::Schema(format!(
                        "gluing {gi}: polygon `{}` has no edge {}",
                        poly.id, side.edge
                    )));
                }
                if !used.insert(side) {
                    return Err(Error::Schema(format!(
                        "gluing {gi}: edge {} of `{}` glued more than once",
                        side.edge, poly.id
                    )));
                }
            }
            let la = polygons[a.polygon].edge_len(a.edge);
            let lb = polygons[b.polygon].edge_len(b.edge);
            let residual = (la - lb).abs();
            if residual > EPS_LEN {
                return Err(Error::Geometry(format!(
                    "gluing {gi}: edge lengths {la} and {lb} differ by {residual:e}"
                )));
            }
            let (a0, a1) = polygons[a.polygon].edge(a.edge);
            let (b0, b1) = polygons[b.polygon].edge(b.edge);
            gluings.push(EdgeGluing {
                label: default_label(gi),
                side_a: a,
                side_b: b,
                motion: RigidMotion::mapping_segment(b0, b1, a1, a0),
                length_residual: residual,
            });
        }

        let mut comp = UnionFind::new(polygons.len());
        for g in &gluings {
            comp.union(g.side_a.polygon, g.side_b.polygon);
        }
        if (0..polygons.len()).any(|i| comp.find(i) != 0) {
            return Err(Error::Topology("surface is disconnected".into()));
        }

        // triangulate
        let mut triangles = Vec::new();
        let mut polygon_edge_tri = Vec::with_capacity(polygons.len());
        for (pi, poly) in polygons.iter().enumerate() {
            let n = poly.vertices.len();
            let base = triangles.len();
            for t in ear_clip(&poly.vertices) {
                triangles.push(Triangle {
                    polygon: pi,
                    vertex_ids: t,
                    pts: [poly.vertices[t[0]], poly.vertices[t[1]], poly.vertices[t[2]]],
                    adj: [Adjacency::Boundary; 3],
                });
            }
            let mut edge_tri = vec![(usize::MAX, 0); n];
            // diagonals: pair up directed edges (u→v) with (v→u)
            let mut directed = std::collections::HashMap::new();
            for ti in base..triangles.len() {
                for e in 0..3 {
                    let u = triangles[ti].vertex_ids[e];
                    let v = triangles[ti].vertex_ids[(e + 1) % 3];
                    if (u + 1) % n == v {
                        edge_tri[u] = (ti, e);
                    }
                    directed.insert((u, v), (ti, e));
                }
            }
            for (&(u, v), &(ti, e)) in &directed {
                if (u + 1) % n == v {
                    continue;
                }
                let &(tj, f) = directed
                    .get(&(v, u))
                    .ok_or_else(|| Error::Geometry(format!("triangulation of `{}` failed", poly.id)))?;
                triangles[ti].adj[e] = Adjacency::Interior {
                    tri: tj,
                    edge: f,
                    letter: None,
                    motion: RigidMotion::IDENTITY,
                };
            }
            if edge_tri.iter().any(|&(t, _)| t == usize::MAX) {
                return Err(Error::Geometry(format!("triangulation of `{}` failed", poly.id)));
            }
            polygon_edge_tri.push(edge_tri);
        }
        for (gi, g) in gluings.iter().enumerate() {
            let (ta, ea) = polygon_edge_tri[g.side_a.polygon][g.side_a.edge];
            let (tb, eb) = polygon_edge_tri[g.side_b.polygon][g.side_b.edge];
            triangles[tb].adj[eb] = Adjacency::Interior {
                tri: ta,
                edge: ea,
                letter: Some(Letter::new(gi, false)),
                motion: g.motion,
            };
            triangles[ta].adj[ea] = Adjacency::Interior {
                tri: tb,
                edge: eb,
                letter: Some(Letter::new(gi, true)),
                motion: g.motion.inverse(),
            };
        }

        // vertex classes
        let nt = triangles.len();
        let mut uf = UnionFind::new(nt * 3);
        for (ti, t) in triangles.iter().enumerate() {
            for e in 0..3 {
                if let Some((tj, f)) = t.adj[e].neighbor() {
                    uf.union(ti * 3 + e, tj * 3 + (f + 1) % 3);
                    uf.union(ti * 3 + (e + 1) % 3, tj * 3 + f);
                }
            }
        }
        let mut root_to_class = std::collections::HashMap::new();
        let mut corner_class = vec![[0usize; 3]; nt];
        for ti in 0..nt {
            for k in 0..3 {
                let r = uf.find(ti * 3 + k);
                let next = root_to_class.len();
                corner_class[ti][k] = *root_to_class.entry(r).or_insert(next);
            }
        }
        let nclass = root_to_class.len();
        let mut classes = Vec::with_capacity(nclass);
        for c in 0..nclass {
            let corners: Vec<(usize, usize)> = (0..nt)
                .flat_map(|t| (0..3).map(move |k| (t, k)))
                .filter(|&(t, k)| corner_class[t][k] == c)
                .collect();
            let boundary = corners.iter().any(|&(t, k)| {
                triangles[t].adj[k] == Adjacency::Boundary
                    || triangles[t].adj[(k + 2) % 3] == Adjacency::Boundary
            });
            let fan = build_fan(&triangles, &corners, boundary)?;
            let mut offsets = Vec::with_capacity(fan.len());
            let mut acc = 0.0;
            for &(t, k) in &fan {
                offsets.push(acc);
                acc += triangles[t].corner_angle(k);
            }
            let flat = if boundary { PI } else { TAU };
            let kind = if (acc - flat).abs() <= EPS_ANG {
                ConeKind::Regular
            } else if acc < flat {
                ConeKind::Small
            } else {
                ConeKind::Large
            };
            let mut members: Vec<(usize, usize)> = corners
                .iter()
                .map(|&(t, k)| (triangles[t].polygon, triangles[t].vertex_ids[k]))
                .collect();
            members.sort_unstable();
            members.dedup();
            classes.push(ConePoint {
                class_id: c,
                members,
                fan,
                fan_offsets: offsets,
                angle: acc,
                kind,
                boundary,
            });
        }

        let total_edges: usize = polygons.iter().map(|p| p.vertices.len()).sum();
        let edges = total_edges - gluings.len();
        let euler = nclass as i64 - edges as i64 + polygons.len() as i64;
        let boundary_components = count_boundary_components(&triangles, &corner_class, nclass);
        let genus = (2 - boundary_components as i64 - euler) / 2;
        let labels = gluings.iter().map(|g| g.label.clone()).collect();
        Ok(Self {
            name,
            polygons,
            gluings,
            labels,
            triangles,
            corner_class,
            classes,
            topology: Topology {
                vertices: nclass,
                edges,
                faces: 0,
                euler_characteristic: euler,
                boundary_components,
                genus,
            },
            polygon_edge_tri,
        }
        .with_faces())
    }

    fn with_faces(mut self) -> Self {
        self.topology.faces = self.polygons.len();
        self
    }

    pub fn polygon_index(&self, id: &str) -> Option<usize> {
        self.polygons.iter().position(|p| p.id == id)
    }

    pub fn cone_points(&self) -> &[ConePoint] {
        &self.classes
    }

    /// Vertex classes whose angle differs from the flat one.
    pub fn singular_points(&self) -> impl Iterator<Item = &ConePoint> {
        self.classes.iter().filter(|c| c.is_cone())
    }

    pub fn area(&self) -> f64 {
        self.triangles.iter().map(Triangle::area).sum()
    }

    pub fn polygon_area(&self) -> f64 {
        self.polygons.iter().map(|p| polygon_signed_area(&p.vertices)).sum()
    }

    /// Length scale used for nets and margins: the largest polygon diameter.
    pub fn diameter(&self) -> f64 {
        self.polygons
            .iter()
            .flat_map(|p| {
                p.vertices
                    .iter()
                    .flat_map(move |a| p.vertices.iter().map(move |b| a.dist(*b)))
            })
            .fold(0.0, f64::max)
    }

    pub fn max_edge(&self) -> f64 {
        self.triangles
            .iter()
            .flat_map(|t| (0..3).map(move |e| {
                let (a, b) = t.edge(e);
                a.dist(b)
            }))
            .fold(0.0, f64::max)
    }

    pub fn class_of(&self, tri: usize, corner: usize) -> &ConePoint {
        &self.classes[self.corner_class[tri][corner]]
    }

    /// Find the triangle of polygon `polygon` containing `pos` (polygon chart).
    pub fn locate(&self, polygon: usize, pos: PlanarPoint) -> Result<SurfacePoint> {
        for (ti, t) in self.triangles.iter().enumerate() {
            if t.polygon != polygon {
                continue;
            }
            for k in 0..3 {
                if t.pts[k].dist(pos) <= EPS_INC {
                    return Ok(SurfacePoint::Vertex {
                        class: self.corner_class[ti][k],
                    });
                }
            }
            if point_in_triangle(pos, &t.pts, EPS_INC) {
                return Ok(SurfacePoint::Chart { tri: ti, pos });
            }
        }
        Err(Error::Geometry(format!(
            "point {pos:?} is not inside polygon {polygon}"
        )))
    }

    /// A triangle corner representing a surface point: `(tri, position)`.
    pub fn chart_of(&self, p: &SurfacePoint) -> (usize, PlanarPoint) {
        match *p {
            SurfacePoint::Chart { tri, pos } => (tri, pos),
            SurfacePoint::Vertex { class } => {
                let (t, k) = self.classes[class].fan[0];
                (t, self.triangles[t].pts[k])
            }
        }
    }

    /// Which corner of `tri` sits at `pos`, if any.
    pub fn corner_at(&self, tri: usize, pos: PlanarPoint) -> Option<usize> {
        (0..3).find(|&k| self.triangles[tri].pts[k].dist(pos) <= EPS_INC)
    }

    /// The edge of `tri` containing `pos` in its interior, if any.
    pub fn edge_at(&self, tri: usize, pos: PlanarPoint) -> Option<usize> {
        let t = &self.triangles[tri];
        (0..3).find(|&e| {
            let (a, b) = t.edge(e);
            point_segment_distance(pos, a, b) <= EPS_INC
        })
    }

    /// Number of vertex classes touching the given triangle's corners, in order.
    pub fn corners(&self, tri: usize) -> [usize; 3] {
        self.corner_class[tri]
    }
}

/// Counter-clockwise ordering of the corners around one vertex class.
/// Stepping counter-clockwise crosses the incoming edge `k-1` of corner `k`.
fn build_fan(
    triangles: &[Triangle],
    corners: &[(usize, usize)],
    boundary: bool,
) -> Result<Vec<(usize, usize)>> {
    let start = if boundary {
        *corners
            .iter()
            .find(|&&(t, k)| triangles[t].adj[k] == Adjacency::Boundary)
            .ok_or_else(|| Error::Topology("boundary vertex without boundary edge".into()))?
    } else {
        corners[0]
    };
    let mut fan = vec![start];
    let (mut t, mut k) = start;
    loop {
        let incoming = (k + 2) % 3;
        match triangles[t].adj[incoming].neighbor() {
            None => break,
            Some((tn, en)) => {
                if (tn, en) == start || (tn, en) == fan[0] {
                    break;
                }
                t = tn;
                k = en;
                if fan.contains(&(t, k)) {
                    break;
                }
                fan.push((t, k));
            }
        }
        if fan.len() > corners.len() {
            break;
        }
    }
    if fan.len() != corners.len() {
        return Err(Error::Topology(format!(
            "vertex link is not a single cycle or path ({} of {} corners reached)",
            fan.len(),
            corners.len()
        )));
    }
    Ok(fan)
}

fn count_boundary_components(
    triangles: &[Triangle],
    corner_class: &[[usize; 3]],
    nclass: usize,
) -> usize {
    let mut uf = UnionFind::new(nclass);
    let mut touched = vec![false; nclass];
    for (ti, t) in triangles.iter().enumerate() {
        for e in 0..3 {
            if t.adj[e] == Adjacency::Boundary {
                let a = corner_class[ti][e];
                let b = corner_class[ti][(e + 1) % 3];
                touched[a] = true;
                touched[b] = true;
                uf.union(a, b);
            }
        }
    }
    let mut roots: Vec<usize> = (0..nclass).filter(|&c| touched[c]).map(|c| uf.find(c)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_clockwise_polygon() {
        let p = Polygon {
            id: "p".into(),
            vertices: vec![
                PlanarPoint::new(0.0, 0.0),
                PlanarPoint::new(0.0, 1.0),
                PlanarPoint::new(1.0, 0.0),
            ],
        };
        assert!(matches!(check_polygon(&p), Err(Error::Geometry(_))));
    }

    #[test]
    fn rejects_bowtie() {
        let p = Polygon {
            id: "p".into(),
            vertices: vec![
                PlanarPoint::new(0.0, 0.0),
                PlanarPoint::new(2.0, 0.0),
                PlanarPoint::new(0.0, 1.0),
                PlanarPoint::new(2.0, 1.0),
            ],
        };
        assert!(check_polygon(&p).is_err());
    }

    #[test]
    fn rejects_double_gluing() {
        let sq = Polygon {
            id: "s".into(),
            vertices: vec![
                PlanarPoint::new(0.0, 0.0),
                PlanarPoint::new(1.0, 0.0),
                PlanarPoint::new(1.0, 1.0),
                PlanarPoint::new(0.0, 1.0),
            ],
        };
        let e = |i| EdgeRef { polygon: 0, edge: i };
        let r = ConeSurface::new(None, vec![sq], vec![(e(3), e(1)), (e(1), e(3))]);
        assert!(matches!(r, Err(Error::Schema(_))));
    }

    #[test]
    fn disconnected_is_topology_error() {
        let tri = |id: &str, dx: f64| Polygon {
            id: id.into(),
            vertices: vec![
                PlanarPoint::new(dx, 0.0),
                PlanarPoint::new(dx + 1.0, 0.0),
                PlanarPoint::new(dx, 1.0),
            ],
        };
        let r = ConeSurface::new(None, vec![tri("a", 0.0), tri("b", 5.0)], vec![]);
        assert!(matches!(r, Err(Error::Topology(_))));
    }
}
