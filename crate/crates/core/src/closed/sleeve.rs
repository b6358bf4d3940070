//! A closed polyline threaded through a cyclic corridor of triangles.
//!
//! Crossing `i` leaves triangle `cross[i].tri` through edge `cross[i].edge`
//! at parameter `t[i]` (measured from the edge's first corner). The triangle
//! entered is `cross[i + 1].tri`.

use crate::error::{Error, Result};
use crate::fan;
use crate::geom::{normalize_signed, PlanarPoint, RigidMotion};
use crate::path::{ConePassage, GeodesicPath, PathEvent, Termination};
use crate::surface::{Adjacency, ConeKind, ConeSurface, SurfacePoint};
use crate::word::{HomotopyWord, Letter};
use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

/// Parameters closer than this to an edge end are snapped onto the vertex.
const SNAP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Crossing {
    pub tri: usize,
    pub edge: usize,
}

#[derive(Clone, Copy)]
struct Far {
    tri: usize,
    edge: usize,
    motion: RigidMotion,
    letter: Option<Letter>,
}

fn far(s: &ConeSurface, c: Crossing) -> Far {
    match s.triangles[c.tri].adj[c.edge] {
        Adjacency::Interior { tri, edge, letter, motion } => Far { tri, edge, motion, letter },
        Adjacency::Boundary => unreachable!("sleeves never cross the boundary"),
    }
}

/// Corner of the far triangle at the vertex sitting at `corner` of `c.tri`.
fn far_corner(s: &ConeSurface, c: Crossing, corner: usize) -> (usize, usize) {
    let f = far(s, c);
    if corner == c.edge {
        (f.tri, (f.edge + 1) % 3)
    } else {
        (f.tri, f.edge)
    }
}

fn edge_has(edge: usize, corner: usize) -> bool {
    corner == edge || corner == (edge + 1) % 3
}

fn angle_between(u: PlanarPoint, v: PlanarPoint) -> f64 {
    u.cross(v).abs().atan2(u.dot(v))
}

/// Walk the fan around the vertex at `start` until `goal`, clockwise or not.
fn fan_walk(s: &ConeSurface, start: (usize, usize), goal: (usize, usize), cw: bool) -> Option<Vec<Crossing>> {
    let limit = s.class_of(start.0, start.1).fan.len() + 1;
    let (mut t, mut k) = start;
    let mut out = Vec::new();
    for _ in 0..=limit {
        if (t, k) == goal {
            return Some(out);
        }
        let e = if cw { k } else { (k + 2) % 3 };
        match s.triangles[t].adj[e] {
            Adjacency::Interior { tri, edge, .. } => {
                out.push(Crossing { tri: t, edge: e });
                (t, k) = if cw { (tri, (edge + 1) % 3) } else { (tri, edge) };
            }
            Adjacency::Boundary => return None,
        }
    }
    None
}

/// Diagonal crossings leading from `from` to `to` inside one polygon.
fn diagonal_path(s: &ConeSurface, from: usize, to: usize) -> Option<Vec<Crossing>> {
    let mut prev: HashMap<usize, Crossing> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = vec![false; s.triangles.len()];
    seen[from] = true;
    while let Some(t) = queue.pop_front() {
        if t == to {
            let mut out = Vec::new();
            let mut cur = to;
            while cur != from {
                let c = prev[&cur];
                out.push(c);
                cur = c.tri;
            }
            out.reverse();
            return Some(out);
        }
        for (e, a) in s.triangles[t].adj.iter().enumerate() {
            if let Adjacency::Interior { tri, letter: None, .. } = *a {
                if !seen[tri] {
                    seen[tri] = true;
                    prev.insert(tri, Crossing { tri: t, edge: e });
                    queue.push_back(tri);
                }
            }
        }
    }
    None
}

/// Chart geometry seen from the triangle between crossings `i-1` and `i`.
#[derive(Clone, Copy)]
pub(crate) struct Frame {
    /// Exit edge.
    a: PlanarPoint,
    b: PlanarPoint,
    /// Entry edge, oriented so the previous parameter applies directly.
    pa: PlanarPoint,
    pb: PlanarPoint,
    /// Next exit edge carried into this chart.
    qa: PlanarPoint,
    qb: PlanarPoint,
}

/// A maximal stretch of consecutive crossings sitting on one vertex.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Run {
    pub start: usize,
    pub len: usize,
    pub class: usize,
}

struct Band {
    offsets: Vec<(f64, f64)>,
    lo: f64,
    hi: f64,
}

pub(crate) enum Move {
    None,
    Moved,
}

#[derive(Clone, Debug)]
pub(crate) struct Sleeve {
    pub cross: Vec<Crossing>,
    pub t: Vec<f64>,
}

impl Sleeve {
    /// Corridor realizing a cyclic word, threaded through edge midpoints.
    pub fn from_word(s: &ConeSurface, w: &HomotopyWord) -> Result<Self> {
        let n = w.letters.len();
        if n == 0 {
            return Err(Error::Word("the trivial class has no closed geodesic".into()));
        }
        let mut dep = Vec::with_capacity(n);
        for l in &w.letters {
            let g = s
                .gluings
                .get(l.gluing)
                .ok_or_else(|| Error::Word(format!("no gluing {}", l.gluing)))?;
            let (from, to) = if l.inverse { (g.side_a, g.side_b) } else { (g.side_b, g.side_a) };
            let (tri, edge) = s.polygon_edge_tri[from.polygon][from.edge];
            dep.push((Crossing { tri, edge }, to.polygon));
        }
        let mut cross = Vec::new();
        for i in 0..n {
            let c = dep[i].0;
            let (prev, poly) = dep[(i + n - 1) % n];
            if s.triangles[c.tri].polygon != poly {
                return Err(Error::Word(format!(
                    "letter {} leaves polygon {} but the previous letter enters polygon {}",
                    i, s.triangles[c.tri].polygon, poly
                )));
            }
            let landing = far(s, prev).tri;
            let path = diagonal_path(s, landing, c.tri)
                .ok_or_else(|| Error::Topology("polygon triangulation is disconnected".into()))?;
            cross.extend(path);
            cross.push(c);
        }
        let mut sl = Sleeve { t: vec![0.5; cross.len()], cross };
        sl.reduce(s);
        if sl.cross.is_empty() {
            return Err(Error::Word("the word is trivial".into()));
        }
        Ok(sl)
    }

    pub fn len(&self) -> usize {
        self.cross.len()
    }

    fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    /// Cancel crossings that immediately undo each other.
    pub fn reduce(&mut self, s: &ConeSurface) {
        loop {
            let m = self.len();
            if m < 2 {
                return;
            }
            let hit = (0..m).find(|&i| {
                let f = far(s, self.cross[i]);
                self.cross[(i + 1) % m] == Crossing { tri: f.tri, edge: f.edge }
            });
            let Some(i) = hit else { return };
            let j = (i + 1) % m;
            for k in [i.max(j), i.min(j)] {
                self.cross.remove(k);
                self.t.remove(k);
            }
        }
    }

    pub fn rotate(&mut self, k: usize) {
        let k = k % self.len().max(1);
        self.cross.rotate_left(k);
        self.t.rotate_left(k);
    }

    pub fn frames(&self, s: &ConeSurface) -> Vec<Frame> {
        let m = self.len();
        (0..m)
            .map(|i| {
                let c = self.cross[i];
                let tri = &s.triangles[c.tri];
                let (a, b) = tri.edge(c.edge);
                let pf = far(s, self.cross[self.prev(i)]);
                let (pb, pa) = tri.edge(pf.edge);
                let nf = far(s, c);
                let nc = self.cross[self.next(i)];
                let (na, nb) = s.triangles[nc.tri].edge(nc.edge);
                let back = nf.motion.inverse();
                Frame { a, b, pa, pb, qa: back.apply(na), qb: back.apply(nb) }
            })
            .collect()
    }

    fn entry(&self, fr: &[Frame], i: usize) -> PlanarPoint {
        fr[i].pa.lerp(fr[i].pb, self.t[self.prev(i)])
    }

    fn exit(&self, fr: &[Frame], i: usize) -> PlanarPoint {
        fr[i].a.lerp(fr[i].b, self.t[i])
    }

    pub fn length(&self, fr: &[Frame]) -> f64 {
        (0..self.len()).map(|i| self.entry(fr, i).dist(self.exit(fr, i))).sum()
    }

    /// One Gauss–Seidel pass: each point moves to the best spot on its edge
    /// given its two neighbors.
    pub fn sweep(&mut self, fr: &[Frame]) {
        for i in 0..self.len() {
            let p = self.entry(fr, i);
            let q = fr[i].qa.lerp(fr[i].qb, self.t[self.next(i)]);
            let (a, b) = (fr[i].a, fr[i].b);
            let d = q - p;
            let den = (b - a).cross(d);
            if den.abs() <= 1e-300 {
                continue;
            }
            let mut t = ((p - a).cross(d) / den).clamp(0.0, 1.0);
            if t < SNAP {
                t = 0.0;
            } else if t > 1.0 - SNAP {
                t = 1.0;
            }
            self.t[i] = t;
        }
    }

    /// Corner of `cross[i].tri` holding point `i`, if it sits on a vertex.
    fn corner(&self, i: usize) -> Option<usize> {
        let e = self.cross[i].edge;
        if self.t[i] == 0.0 {
            Some(e)
        } else if self.t[i] == 1.0 {
            Some((e + 1) % 3)
        } else {
            None
        }
    }

    /// Whether points `i` and `i+1` sit on the same vertex of the corridor.
    fn continues(&self, s: &ConeSurface, i: usize) -> bool {
        let (Some(c), Some(cn)) = (self.corner(i), self.corner(self.next(i))) else {
            return false;
        };
        far_corner(s, self.cross[i], c).1 == cn
    }

    /// Maximal vertex runs. `Err` when the whole loop collapses onto one vertex.
    pub fn runs(&self, s: &ConeSurface) -> Result<Vec<Run>> {
        let m = self.len();
        if (0..m).all(|i| self.continues(s, i)) {
            return Err(Error::Word("the class is peripheral around a single vertex".into()));
        }
        let mut out = Vec::new();
        for i in 0..m {
            let Some(c) = self.corner(i) else { continue };
            if self.continues(s, self.prev(i)) {
                continue;
            }
            let mut len = 1;
            while self.continues(s, (i + len - 1) % m) {
                len += 1;
            }
            out.push(Run {
                start: i,
                len,
                class: s.corner_class[self.cross[i].tri][c],
            });
        }
        Ok(out)
    }

    /// Angle swept at the vertex on the corridor side, going from the entry
    /// point `p` of `(ti, ci)` through the crossings `fan` to `q`.
    fn side_angle(
        s: &ConeSurface,
        (ti, ci): (usize, usize),
        p: PlanarPoint,
        fan: &[Crossing],
        q_of: impl Fn(usize) -> PlanarPoint,
    ) -> f64 {
        let tri = &s.triangles[ti];
        let v = tri.pts[ci];
        let Some(first) = fan.first() else {
            return angle_between(p - v, q_of(ti) - v);
        };
        let other = |t: &crate::surface::Triangle, e: usize, c: usize| {
            let (a, b) = t.edge(e);
            if c == e { b } else { a }
        };
        let mut total = angle_between(p - v, other(tri, first.edge, ci) - v);
        let (mut t, mut k) = far_corner(s, *first, ci);
        for c in &fan[1..] {
            total += s.triangles[t].corner_angle(k);
            (t, k) = far_corner(s, *c, k);
        }
        let last = fan.last().unwrap();
        let lt = &s.triangles[t];
        let vv = lt.pts[k];
        let entry = far(s, *last).edge;
        total + angle_between(other(lt, entry, k) - vv, q_of(t) - vv)
    }

    /// Inspect vertex runs and apply the first shortening move found:
    /// leaving a vertex the path wraps on its narrow side, swinging to the
    /// other side of a vertex where that side is narrower than π, or
    /// unwinding a run that turns more than once around its vertex.
    pub fn run_move(&mut self, s: &ConeSurface, eps_ang: f64) -> Result<Move> {
        let runs = self.runs(s)?;
        let fr = self.frames(s);
        for r in runs {
            let m = self.len();
            let i = r.start;
            let k = (i + r.len - 1) % m;
            let ci = self.corner(i).unwrap();
            let ti = self.cross[i].tri;
            let p = self.entry(&fr, i);
            let kn = self.next(k);
            let q = self.exit(&fr, kn);
            let goal = far_corner(s, self.cross[k], self.corner(k).unwrap());
            let fan: Vec<Crossing> = (0..r.len).map(|j| self.cross[(i + j) % m]).collect();
            let qf = |_t: usize| q;
            let alpha = Self::side_angle(s, (ti, ci), p, &fan, qf);
            let cw = self.cross[i].edge == ci;
            let same = fan_walk(s, (ti, ci), goal, cw);
            let other = fan_walk(s, (ti, ci), goal, !cw);
            let a_same = same.as_ref().map(|f| Self::side_angle(s, (ti, ci), p, f, qf));
            let a_other = other.as_ref().map(|f| Self::side_angle(s, (ti, ci), p, f, qf));
            // pick the narrowest available side below π
            let mut best: Option<(f64, Vec<Crossing>)> = None;
            if alpha < PI - eps_ang {
                best = Some((alpha, fan.clone()));
            }
            for (a, f) in [(a_same, &same), (a_other, &other)] {
                if let (Some(a), Some(f)) = (a, f) {
                    if a < PI - eps_ang && best.as_ref().is_none_or(|b| a < b.0 - 1e-15) && *f != fan {
                        best = Some((a, f.clone()));
                    }
                }
            }
            if let Some((a, f)) = best {
                self.leave_vertex(s, i, r.len, (ti, ci), p, q, a, f);
                return Ok(Move::Moved);
            }
            // unwind without moving off the vertex
            if let (Some(f), Some(a)) = (&same, a_same) {
                if alpha > a + 1e-12 && f.len() < fan.len() {
                    let vals = on_vertex(s, (ti, ci), f);
                    self.splice(s, i, r.len, f.clone(), vals);
                    return Ok(Move::Moved);
                }
            }
        }
        Ok(Move::None)
    }

    /// Replace crossings `i..i+len` by `fan` with the given parameters, then cancel backtracks.
    fn splice(&mut self, s: &ConeSurface, i: usize, len: usize, fan: Vec<Crossing>, vals: Vec<f64>) {
        self.rotate(i);
        self.cross.drain(0..len);
        self.t.drain(0..len);
        self.cross.splice(0..0, fan);
        self.t.splice(0..0, vals);
        self.reduce(s);
    }

    /// Move the run off its vertex through `fan`, along a chord of a small
    /// circle about the vertex; the new polyline is strictly shorter.
    #[allow(clippy::too_many_arguments)]
    fn leave_vertex(
        &mut self,
        s: &ConeSurface,
        i: usize,
        len: usize,
        (ti, ci): (usize, usize),
        p: PlanarPoint,
        q: PlanarPoint,
        alpha: f64,
        fan: Vec<Crossing>,
    ) {
        let tri = &s.triangles[ti];
        let v = tri.pts[ci];
        // cumulative angle of each fan edge measured from the ray towards p
        let mut rays = Vec::with_capacity(fan.len());
        let mut r = p.dist(v);
        let (mut t, mut k) = (ti, ci);
        let mut acc = 0.0;
        for (j, c) in fan.iter().enumerate() {
            let ct = &s.triangles[t];
            let (ea, eb) = ct.edge(c.edge);
            let el = ea.dist(eb);
            let other = if k == c.edge { eb } else { ea };
            acc += if j == 0 {
                angle_between(p - v, other - v)
            } else {
                ct.corner_angle(k)
            };
            rays.push((acc, el, k == c.edge));
            r = r.min(el);
            (t, k) = far_corner(s, *c, k);
        }
        let lt = &s.triangles[t];
        r = r.min(q.dist(lt.pts[k]));
        let r = 0.5 * r;
        let h = r * (alpha / 2.0).cos();
        let vals = rays
            .iter()
            .map(|&(phi, el, from_first)| {
                let rho = (h / (phi - alpha / 2.0).cos()).min(r);
                let u = (rho / el).clamp(0.0, 1.0);
                if from_first { u } else { 1.0 - u }
            })
            .collect();
        self.splice(s, i, len, fan, vals);
    }

    /// Place free points exactly on straight segments between consecutive
    /// vertex runs, or on the middle line of a flat band when there are none.
    pub fn polished(&self, s: &ConeSurface) -> Option<Sleeve> {
        let runs = self.runs(s).ok()?;
        let mut out = self.clone();
        let m = self.len();
        if runs.is_empty() {
            let band = self.band(s)?;
            return Some(self.at_offset(&band, 0.5 * (band.lo + band.hi)));
        }
        for (ri, r) in runs.iter().enumerate() {
            let nxt = runs[(ri + 1) % runs.len()];
            let k = (r.start + r.len - 1) % m;
            let first_free = (k + 1) % m;
            if first_free == nxt.start {
                continue;
            }
            let (t0, c0) = far_corner(s, self.cross[k], self.corner(k).unwrap());
            let va = s.triangles[t0].pts[c0];
            let mut mot = RigidMotion::IDENTITY;
            let mut edges = Vec::new();
            let mut j = first_free;
            while j != nxt.start {
                let c = self.cross[j];
                let (a, b) = s.triangles[c.tri].edge(c.edge);
                edges.push((j, mot.apply(a), mot.apply(b)));
                mot = mot.compose(&far(s, c).motion.inverse());
                j = (j + 1) % m;
            }
            let cb = self.corner(nxt.start).unwrap();
            let vb = mot.apply(s.triangles[self.cross[nxt.start].tri].pts[cb]);
            let d = vb - va;
            for (j, a, b) in edges {
                let den = (b - a).cross(d);
                if den.abs() <= 1e-300 {
                    return None;
                }
                let t = (va - a).cross(d) / den;
                if !(-1e-9..=1.0 + 1e-9).contains(&t) {
                    return None;
                }
                out.t[j] = t.clamp(0.0, 1.0);
            }
        }
        Some(out)
    }

    /// Lines parallel to the translation of a loop without vertex runs.
    fn band(&self, s: &ConeSurface) -> Option<Band> {
        let mut mot = RigidMotion::IDENTITY;
        let mut edges = Vec::with_capacity(self.len());
        for c in &self.cross {
            let (a, b) = s.triangles[c.tri].edge(c.edge);
            edges.push((mot.apply(a), mot.apply(b)));
            mot = mot.compose(&far(s, *c).motion.inverse());
        }
        if normalize_signed(mot.rotation).abs() > 1e-9 || mot.translation.norm() <= 1e-12 {
            return None;
        }
        let u = mot.translation * (1.0 / mot.translation.norm());
        let nrm = PlanarPoint::new(-u.y, u.x);
        let offsets: Vec<(f64, f64)> = edges.iter().map(|&(a, b)| (nrm.dot(a), nrm.dot(b))).collect();
        let lo = offsets.iter().map(|o| o.0.min(o.1)).fold(f64::NEG_INFINITY, f64::max);
        let hi = offsets.iter().map(|o| o.0.max(o.1)).fold(f64::INFINITY, f64::min);
        (lo <= hi + 1e-12).then_some(Band { offsets, lo, hi })
    }

    fn at_offset(&self, band: &Band, c: f64) -> Sleeve {
        let mut out = self.clone();
        for (j, &(oa, ob)) in band.offsets.iter().enumerate() {
            if (ob - oa).abs() > 1e-15 {
                out.t[j] = ((c - oa) / (ob - oa)).clamp(0.0, 1.0);
            }
        }
        out
    }

    /// Parallel copies of a loop across its flat band, strictly inside it.
    pub fn band_copies(&self, s: &ConeSurface, n: usize) -> Vec<Sleeve> {
        if !self.runs(s).is_ok_and(|r| r.is_empty()) {
            return Vec::new();
        }
        let Some(band) = self.band(s) else { return Vec::new() };
        (1..=n)
            .map(|i| self.at_offset(&band, band.lo + (band.hi - band.lo) * i as f64 / (n + 1) as f64))
            .collect()
    }

    /// Convert into a closed path. Runs become cone passages.
    pub fn to_path(&self, s: &ConeSurface) -> Result<GeodesicPath> {
        let runs = self.runs(s)?;
        let fr = self.frames(s);
        let m = self.len();
        let mut run_at: HashMap<usize, Run> = HashMap::new();
        for r in &runs {
            run_at.insert(r.start, *r);
        }
        let start = runs.first().map_or(0, |r| (r.start + r.len) % m);
        let mut events = Vec::new();
        let mut i = start;
        let mut steps = 0;
        while steps < m {
            let a = self.entry(&fr, i);
            let b = self.exit(&fr, i);
            let tri = self.cross[i].tri;
            if a.dist(b) > 0.0 {
                events.push(PathEvent::Seg { a, b, tri });
            }
            if let Some(r) = run_at.get(&i) {
                events.push(PathEvent::Cone(self.passage(s, &fr, *r)));
                i = (i + r.len) % m;
                steps += r.len;
                continue;
            }
            if let Some(l) = far(s, self.cross[i]).letter {
                events.push(PathEvent::Cross(l));
            }
            i = (i + 1) % m;
            steps += 1;
        }
        let start_pt = match runs.first() {
            Some(r) => SurfacePoint::Vertex { class: r.class },
            None => SurfacePoint::Chart {
                tri: self.cross[start].tri,
                pos: self.entry(&fr, start),
            },
        };
        Ok(GeodesicPath::from_events(events, start_pt, start_pt, true, Termination::Closed))
    }

    fn passage(&self, s: &ConeSurface, fr: &[Frame], r: Run) -> ConePassage {
        let m = self.len();
        let i = r.start;
        let k = (i + r.len - 1) % m;
        let ci = self.corner(i).unwrap();
        let ti = self.cross[i].tri;
        let v = s.triangles[ti].pts[ci];
        let pos_in = fan::position_of(s, ti, ci, self.entry(fr, i) - v);
        let (to, co) = far_corner(s, self.cross[k], self.corner(k).unwrap());
        let kn = (k + 1) % m;
        let vo = s.triangles[to].pts[co];
        let pos_out = fan::position_of(s, to, co, self.exit(fr, kn) - vo);
        let mut p = fan::passage(s, r.class, pos_in, pos_out);
        p.via = (0..r.len)
            .filter_map(|j| far(s, self.cross[(i + j) % m]).letter)
            .collect();
        p
    }

    /// Runs of crossings whose edges all end at the same small interior cone.
    pub fn small_cone_runs(&self, s: &ConeSurface) -> Vec<(usize, usize, usize)> {
        let m = self.len();
        let mut out = Vec::new();
        for i in 0..m {
            let c = self.cross[i];
            for corner in [c.edge, (c.edge + 1) % 3] {
                let class = &s.classes[s.corner_class[c.tri][corner]];
                if class.kind != ConeKind::Small || class.boundary {
                    continue;
                }
                let entry = far(s, self.cross[self.prev(i)]).edge;
                if edge_has(entry, corner) && m > 1 {
                    continue;
                }
                let mut len = 1;
                let mut k = corner;
                while len < m {
                    let (_, kn) = far_corner(s, self.cross[(i + len - 1) % m], k);
                    let nc = self.cross[(i + len) % m];
                    if !edge_has(nc.edge, kn) {
                        break;
                    }
                    k = kn;
                    len += 1;
                }
                if len < m {
                    out.push((i, len, corner));
                }
            }
        }
        out
    }

    /// Send the run `(i, len)` around its vertex the other way.
    pub fn flipped(&self, s: &ConeSurface, (i, len, corner): (usize, usize, usize)) -> Option<Sleeve> {
        let m = self.len();
        let c0 = self.cross[i];
        let mut k = corner;
        for j in 0..len {
            let (_, kn) = far_corner(s, self.cross[(i + j) % m], k);
            k = kn;
        }
        let last = self.cross[(i + len - 1) % m];
        let goal = (far(s, last).tri, k);
        let cw = c0.edge == corner;
        let fan = fan_walk(s, (c0.tri, corner), goal, !cw)?;
        let mut out = self.clone();
        let n = fan.len();
        out.splice(s, i, len, fan, vec![0.5; n]);
        if out.cross.is_empty() {
            return None;
        }
        // the neighbors of the flipped run restart from midpoints too
        for t in out.t.iter_mut() {
            if *t == 0.0 || *t == 1.0 {
                *t = 0.5;
            }
        }
        Some(out)
    }

    /// Rotation-invariant combinatorial key.
    pub fn key(&self) -> Vec<Crossing> {
        let m = self.len();
        (0..m)
            .map(|r| {
                let mut v = self.cross.clone();
                v.rotate_left(r);
                v
            })
            .min()
            .unwrap_or_default()
    }
}

/// Parameters putting every crossing of `fan` on the vertex at `start`.
fn on_vertex(s: &ConeSurface, start: (usize, usize), fan: &[Crossing]) -> Vec<f64> {
    let (mut t, mut k) = start;
    let mut out = Vec::with_capacity(fan.len());
    for f in fan {
        debug_assert_eq!(t, f.tri);
        out.push(if k == f.edge { 0.0 } else { 1.0 });
        (t, k) = far_corner(s, *f, k);
    }
    out
}
