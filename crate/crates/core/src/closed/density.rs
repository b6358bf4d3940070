use super::{closed_with, ClosedOptions};
use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, project_param, PlanarPoint, RigidMotion};
use crate::path::{crossing_motion, edge_motion, GeodesicPath, PathEvent};
use crate::surface::{ConeSurface, SurfacePoint};
use crate::unfolding::{unfold_with, UnfoldOptions, UnfoldingTree};
use crate::word::{HomotopyWord, Letter};
use serde::Serialize;

/// One member of a density family compared with the target line.
#[derive(Clone, Debug, Serialize)]
pub struct DensityRecord {
    pub n: usize,
    pub word: String,
    pub length: Option<f64>,
    pub window: f64,
    pub sup_distance: Option<f64>,
    /// Side of the target line the loop lies on at both window ends. Inferred
    /// from developed positions only.
    pub side: Option<String>,
    pub status: String,
    #[serde(skip)]
    pub path: Option<GeodesicPath>,
}

/// The target loop and the point of it placed at the window center.
#[derive(Clone, Debug)]
pub struct DensityTarget {
    pub path: GeodesicPath,
    pub tri: usize,
    pub origin: PlanarPoint,
    /// Unit direction of the loop at `origin`, in the chart of `tri`.
    pub direction: PlanarPoint,
}

#[derive(Clone, Copy)]
enum Joint {
    Straight,
    Edge(Option<Letter>),
}

/// A closed path as cyclic segments and the joints following each one.
struct Cyclic {
    segs: Vec<(PlanarPoint, PlanarPoint, usize)>,
    joints: Vec<Joint>,
}

impl Cyclic {
    fn new(p: &GeodesicPath) -> Self {
        let mut segs = Vec::new();
        let mut joints = Vec::new();
        let mut pending = Joint::Edge(None);
        for e in &p.events {
            match e {
                PathEvent::Seg { a, b, tri } => {
                    if !segs.is_empty() {
                        joints.push(pending);
                    }
                    segs.push((*a, *b, *tri));
                    pending = Joint::Edge(None);
                }
                PathEvent::Cross(l) => pending = Joint::Edge(Some(*l)),
                PathEvent::Cone(_) => pending = Joint::Straight,
            }
        }
        joints.push(pending);
        Self { segs, joints }
    }

    fn motion_between(s: &ConeSurface, from: usize, to: usize, l: Option<Letter>) -> RigidMotion {
        if from == to && l.is_none() {
            return RigidMotion::IDENTITY;
        }
        edge_motion(s, from, to, l)
            .or_else(|| crossing_motion(s, from, to))
            .unwrap_or(RigidMotion::IDENTITY)
    }

    /// Motion of segment `j+1` given the motion of segment `j`.
    fn forward(&self, s: &ConeSurface, j: usize, m: RigidMotion) -> RigidMotion {
        let n = self.segs.len();
        let (a, b, t) = self.segs[j];
        let (c, d, u) = self.segs[(j + 1) % n];
        match self.joints[j] {
            Joint::Straight => {
                let at = m.apply(b);
                RigidMotion::mapping_segment(c, d, at, at + m.apply_vector(b - a))
            }
            Joint::Edge(l) => m.compose(&Self::motion_between(s, t, u, l).inverse()),
        }
    }

    /// Motion of segment `j-1` given the motion of segment `j`.
    fn backward(&self, s: &ConeSurface, j: usize, m: RigidMotion) -> RigidMotion {
        let n = self.segs.len();
        let i = (j + n - 1) % n;
        let (a, b, t) = self.segs[i];
        let (c, d, u) = self.segs[j];
        match self.joints[i] {
            Joint::Straight => {
                let at = m.apply(c);
                RigidMotion::mapping_segment(b, b + (b - a), at, at + m.apply_vector(d - c))
            }
            Joint::Edge(l) => m.compose(&Self::motion_between(s, t, u, l)),
        }
    }
}

impl DensityTarget {
    /// Leftmost minimizer of `g`, centered at its point nearest `p`.
    pub fn new(s: &ConeSurface, p: SurfacePoint, g: &HomotopyWord, opts: &ClosedOptions) -> Result<Self> {
        let cg = closed_with(s, g, opts)?;
        let path = cg.paths[0].clone();
        let segs: Vec<_> = path.segments().collect();
        let longest = segs
            .iter()
            .copied()
            .max_by(|x, y| x.0.dist(x.1).total_cmp(&y.0.dist(y.1)))
            .ok_or_else(|| Error::Geometry("target loop has no segments".into()))?;
        let mid = |(a, b, t): (PlanarPoint, PlanarPoint, usize)| (t, a.lerp(b, 0.5), b - a);
        let mut pick = mid(longest);
        if let SurfacePoint::Chart { tri, pos } = p {
            let near = segs
                .iter()
                .filter(|x| x.2 == tri)
                .map(|&(a, b, t)| {
                    let u = project_param(pos, a, b).clamp(0.0, 1.0);
                    (a.lerp(b, u).dist(pos), (t, a.lerp(b, u), b - a), (a, b))
                })
                .min_by(|x, y| x.0.total_cmp(&y.0));
            if let Some((_, at, (a, b))) = near {
                let on_corner = s.triangles[at.0].pts.iter().any(|c| c.dist(at.1) <= 1e-9);
                pick = if on_corner { mid((a, b, at.0)) } else { at };
            }
        }
        let (tri, origin, dir) = pick;
        Ok(Self { path, tri, origin, direction: dir * (1.0 / dir.norm()) })
    }
}

/// Unfolding around the window center; its plane is the one `develop_near` uses.
pub fn window_tree(s: &ConeSurface, target: &DensityTarget, window: f64) -> Result<UnfoldingTree> {
    let radius = 2.0 * s.diameter() + window.min(s.diameter());
    unfold_with(
        s,
        SurfacePoint::Chart { tri: target.tri, pos: target.origin },
        radius,
        UnfoldOptions::default(),
    )
}

/// Developed polyline of `c` near the target window, with the window
/// center and the unit direction of the target line in the same plane.
pub fn develop_near(
    s: &ConeSurface,
    target: &DensityTarget,
    c: &GeodesicPath,
    window: f64,
) -> Result<(Vec<PlanarPoint>, PlanarPoint, PlanarPoint)> {
    let tree = window_tree(s, target, window)?;
    let radius = tree.radius;
    let origin = tree.base_pos;
    let u = tree.cells[tree.root].motion.apply_vector(target.direction);
    let cyc = Cyclic::new(c);
    let mut best: Option<(f64, usize, RigidMotion)> = None;
    for cell in &tree.cells {
        for (j, &(a, b, t)) in cyc.segs.iter().enumerate() {
            if t != cell.source {
                continue;
            }
            let d = point_segment_distance(origin, cell.motion.apply(a), cell.motion.apply(b));
            if best.as_ref().is_none_or(|x| d < x.0) {
                best = Some((d, j, cell.motion));
            }
        }
    }
    let (_, j0, m0) = best.ok_or(Error::Unreachable(radius))?;
    let n = cyc.segs.len();
    let along = |x: PlanarPoint| (x - origin).dot(u);
    let cap = 20.0 * window + 2.0 * c.length;
    let mut fwd = Vec::new();
    let (mut j, mut m, mut walked) = (j0, m0, 0.0);
    loop {
        let (a, b, _) = cyc.segs[j];
        let (da, db) = (m.apply(a), m.apply(b));
        if fwd.is_empty() {
            fwd.push(da);
        }
        fwd.push(db);
        walked += a.dist(b);
        if along(db) > window || walked > cap {
            break;
        }
        m = cyc.forward(s, j, m);
        j = (j + 1) % n;
    }
    let mut bwd = Vec::new();
    let (mut j, mut m, mut walked) = (j0, m0, 0.0);
    loop {
        let (a, _, _) = cyc.segs[j];
        let da = m.apply(a);
        if along(da) < -window || walked > cap {
            break;
        }
        m = cyc.backward(s, j, m);
        j = (j + n - 1) % n;
        let (pa, pb, _) = cyc.segs[j];
        walked += pa.dist(pb);
        bwd.push(m.apply(pa));
    }
    bwd.reverse();
    bwd.extend(fwd);
    Ok((bwd, origin, u))
}

fn compare(
    s: &ConeSurface,
    target: &DensityTarget,
    c: &GeodesicPath,
    window: f64,
) -> Result<(f64, Option<String>)> {
    let (pts, origin, u) = develop_near(s, target, c, window)?;
    let net = s.diameter() / 500.0;
    let along = |x: PlanarPoint| (x - origin).dot(u);
    let off = |x: PlanarPoint| u.cross(x - origin);
    let mut sup: Option<f64> = None;
    let mut ends: Vec<(f64, f64)> = Vec::new();
    for w in pts.windows(2) {
        let k = ((w[0].dist(w[1]) / net).ceil() as usize).max(1);
        for i in 0..=k {
            let x = w[0].lerp(w[1], i as f64 / k as f64);
            let a = along(x);
            if a.abs() <= window {
                sup = Some(sup.map_or(off(x).abs(), |v: f64| v.max(off(x).abs())));
                ends.push((a, off(x)));
            }
        }
    }
    let sup = sup.ok_or_else(|| Error::Geometry("loop does not reach the window".into()))?;
    let lo = ends.iter().min_by(|x, y| x.0.total_cmp(&y.0)).unwrap().1;
    let hi = ends.iter().max_by(|x, y| x.0.total_cmp(&y.0)).unwrap().1;
    let side = |v: f64| {
        if v > 1e-9 {
            1
        } else if v < -1e-9 {
            -1
        } else {
            0
        }
    };
    let label = match (side(lo), side(hi)) {
        (1, 1) => "left",
        (-1, -1) => "right",
        (0, 0) => "on",
        (a, b) if a + b > 0 => "left",
        (a, b) if a + b < 0 => "right",
        _ => "mixed",
    };
    Ok((sup, Some(label.to_string())))
}

/// Compare the leftmost closed geodesic of every family word with the
/// target line over the window `[-window, window]`.
pub fn density_sequence(
    s: &ConeSurface,
    target: &DensityTarget,
    family: &[(usize, HomotopyWord)],
    window: f64,
    opts: &ClosedOptions,
) -> Vec<DensityRecord> {
    family
        .iter()
        .map(|(n, w)| {
            let word = w.format(&s.labels);
            let res = closed_with(s, w, opts).and_then(|cg| {
                let c = cg.paths[0].clone();
                let (sup, side) = compare(s, target, &c, window)?;
                Ok((c, sup, side))
            });
            match res {
                Ok((c, sup, side)) => DensityRecord {
                    n: *n,
                    word,
                    length: Some(c.length),
                    window,
                    sup_distance: Some(sup),
                    side,
                    status: "ok".into(),
                    path: Some(c),
                },
                Err(e) => DensityRecord {
                    n: *n,
                    word,
                    length: None,
                    window,
                    sup_distance: None,
                    side: None,
                    status: format!("failed: {e}"),
                    path: None,
                },
            }
        })
        .collect()
}
