//! Brute-force distances on an ε-net of the universal cover.
//!
//! Every cell of an unfolding contributes sample points along its edges and
//! its corners; any two samples of one cell are joined by a straight chord.
//! Graph paths are genuine surface paths, so every graph distance is an
//! upper bound that converges to the true distance as the net is refined.

use crate::error::{Error, Result};
use crate::geom::{point_in_triangle, PlanarPoint};
use crate::surface::{Adjacency, ConeSurface, SurfacePoint};
use crate::unfolding::{unfold_with, UnfoldOptions, UnfoldingTree};
use crate::word::{HomotopyWord, Letter};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

/// Net spacing used for oracle comparisons.
pub fn default_spacing(s: &ConeSurface) -> f64 {
    s.diameter() / 500.0
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Corner(usize),
    /// Owning cell, its edge, and the parameter along it in units of 1e-9.
    Edge(usize, usize, i64),
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0)
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Smallest value of `|x - p| + |x - q|` over the developed triangle.
fn ellipse_gap(tri: &[PlanarPoint; 3], p: PlanarPoint, q: PlanarPoint) -> f64 {
    if point_in_triangle(p, tri, 0.0) || point_in_triangle(q, tri, 0.0) {
        return p.dist(q);
    }
    let f = |x: PlanarPoint| x.dist(p) + x.dist(q);
    (0..3)
        .map(|e| {
            let (a, b) = (tri[e], tri[(e + 1) % 3]);
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..60 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if f(a.lerp(b, m1)) <= f(a.lerp(b, m2)) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            f(a.lerp(b, 0.5 * (lo + hi)))
        })
        .fold(f64::INFINITY, f64::min)
}

/// Interior sample parameters along the developed edge `a b`.
///
/// Spacing shrinks linearly within `grade` of either end point of the
/// search, where snapping to the net costs the most length.
fn samples(a: PlanarPoint, b: PlanarPoint, spacing: f64, p: PlanarPoint, q: PlanarPoint, grade: f64) -> Vec<f64> {
    let len = a.dist(b);
    let mut out = Vec::new();
    let mut t = 0.0;
    loop {
        let x = a.lerp(b, t);
        let near = x.dist(p).min(x.dist(q));
        let h = spacing * (near / grade).clamp(1e-3, 1.0);
        t += h / len;
        if t >= 1.0 - 0.5 * h / len {
            return out;
        }
        out.push(t);
    }
}

/// Net distance inside `tree` from its base to `(cell, pos)`.
///
/// Cells whose development misses the ellipse of foci base/target and sum
/// `bound` are skipped.
fn net_search(
    s: &ConeSurface,
    tree: &UnfoldingTree,
    target: (usize, PlanarPoint),
    spacing: f64,
    bound: Option<f64>,
) -> Result<f64> {
    let (qc, qpos) = target;
    let p_dev = tree.base_pos;
    let q_dev = tree.cells[qc].motion.apply(qpos);
    let developed = |c: usize| {
        let m = tree.cells[c].motion;
        s.triangles[tree.cells[c].source].pts.map(|x| m.apply(x))
    };
    let keep: Vec<bool> = (0..tree.cells.len())
        .map(|c| c == tree.root || c == qc || bound.is_none_or(|u| ellipse_gap(&developed(c), p_dev, q_dev) <= u))
        .collect();

    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut incident: Vec<Vec<usize>> = Vec::new();
    let mut members: HashMap<usize, Vec<(usize, PlanarPoint)>> = HashMap::new();
    let mut node = |key: Key, cell: usize, incident: &mut Vec<Vec<usize>>| {
        let n = ids.len();
        let id = *ids.entry(key).or_insert(n);
        if id == incident.len() {
            incident.push(Vec::new());
        }
        incident[id].push(cell);
        id
    };
    let grade = s.diameter() / 10.0;
    let inside = |x: PlanarPoint| bound.is_none_or(|u| x.dist(p_dev) + x.dist(q_dev) <= u);
    for c in (0..tree.cells.len()).filter(|&c| keep[c]) {
        let src = tree.cells[c].source;
        let tri = &s.triangles[src];
        let motion = tree.cells[c].motion;
        let mut list = Vec::new();
        for k in 0..3 {
            if !inside(motion.apply(tri.pts[k])) {
                continue;
            }
            list.push((node(Key::Corner(tree.corner_lift[c][k]), c, &mut incident), tri.pts[k]));
        }
        for e in 0..3 {
            let (a, b) = tri.edge(e);
            let other = match (tri.adj[e], tree.cells[c].neighbors[e]) {
                (Adjacency::Interior { edge, motion, .. }, Some(n)) if n < c => Some((n, edge, motion)),
                _ => None,
            };
            // samples come from the owning (lower) cell so both sides agree
            let (owner, oe, owner_to_here, oa, ob) = match other {
                Some((n, ne, m)) => {
                    let (na, nb) = s.triangles[tree.cells[n].source].edge(ne);
                    (n, ne, m.inverse(), na, nb)
                }
                None => (c, e, crate::geom::RigidMotion::IDENTITY, a, b),
            };
            let om = tree.cells[owner].motion;
            for t in samples(om.apply(oa), om.apply(ob), spacing, p_dev, q_dev, grade) {
                let x = owner_to_here.apply(oa.lerp(ob, t));
                if !inside(motion.apply(x)) {
                    continue;
                }
                list.push((node(Key::Edge(owner, oe, (t * 1e9).round() as i64), c, &mut incident), x));
            }
        }
        members.insert(c, list);
    }

    let source = incident.len();
    let sink = source + 1;
    let mut dist = vec![f64::INFINITY; source + 2];
    let mut heap = BinaryHeap::new();
    let base_local = tree.cells[tree.root].motion.inverse().apply(p_dev);
    for &(v, x) in &members[&tree.root] {
        let d = x.dist(base_local);
        if d < dist[v] {
            dist[v] = d;
            heap.push(Item(d, v));
        }
    }
    if tree.root == qc {
        dist[sink] = base_local.dist(qpos);
        heap.push(Item(dist[sink], sink));
    }
    let sink_cells: Vec<(usize, PlanarPoint)> = members[&qc].clone();
    let mut to_sink: HashMap<usize, f64> = HashMap::new();
    for &(v, x) in &sink_cells {
        to_sink.insert(v, x.dist(qpos));
    }
    while let Some(Item(d, v)) = heap.pop() {
        if v == sink {
            return Ok(d);
        }
        if d > dist[v] {
            continue;
        }
        if let Some(&w) = to_sink.get(&v) {
            if d + w < dist[sink] {
                dist[sink] = d + w;
                heap.push(Item(d + w, sink));
            }
        }
        for &c in &incident[v] {
            let list = &members[&c];
            let Some(&(_, xv)) = list.iter().find(|x| x.0 == v) else { continue };
            for &(u, xu) in list {
                let nd = d + xv.dist(xu);
                if nd < dist[u] {
                    dist[u] = nd;
                    heap.push(Item(nd, u));
                }
            }
        }
    }
    Err(Error::Unreachable(tree.radius))
}

/// Two passes: a coarse net bounds the answer, then the fine net is searched
/// inside the ellipse that bound allows.
fn refined(s: &ConeSurface, tree: &UnfoldingTree, target: (usize, PlanarPoint), spacing: f64) -> Result<f64> {
    let coarse = net_search(s, tree, target, (s.diameter() / 20.0).max(spacing), None)?;
    // the nets are not nested, so the fine optimum may sit slightly above the bound
    match net_search(s, tree, target, spacing, Some(coarse * (1.0 + 1e-3) + spacing)) {
        Err(Error::Unreachable(_)) => net_search(s, tree, target, spacing, None),
        r => r,
    }
}

/// Net distance from `p` to the lift of `q` reached along `word`.
///
/// The unfolding grows from one diameter until the lift appears and is
/// then widened to the distance found, so no shorter path can leave it.
pub fn net_distance(
    s: &ConeSurface,
    p: SurfacePoint,
    (q, word): (SurfacePoint, &HomotopyWord),
    spacing: f64,
) -> Result<f64> {
    let cap = (word.len() as f64 + 2.0) * s.diameter();
    let mut radius = s.diameter();
    loop {
        let tree = unfold_with(s, p, radius, UnfoldOptions::default())?;
        let found = tree
            .locate_lift(s, &q, &word.letters)
            .and_then(|target| refined(s, &tree, target, spacing));
        match found {
            Ok(d) if d <= radius => return Ok(d),
            Ok(d) => radius = d * (1.0 + 1e-9),
            Err(Error::Unreachable(_)) if radius < cap => radius = (2.0 * radius).min(cap),
            Err(e) => return Err(e),
        }
    }
}

/// Length of the side crossed by `l`, and the point at parameter `u` on the
/// side it arrives through.
fn arrival_point(s: &ConeSurface, l: Letter, u: f64) -> Result<SurfacePoint> {
    let g = &s.gluings[l.gluing];
    let to = if l.inverse { g.side_b } else { g.side_a };
    let (a, b) = s.polygons[to.polygon].edge(to.edge);
    let d = 1e-7 / a.dist(b);
    s.locate(to.polygon, a.lerp(b, u.clamp(d, 1.0 - d)))
}

/// Net length of the shortest loop freely homotopic to the cyclic word `w`.
///
/// For each rotation of the word the loop is based on the side crossed by
/// its last letter; the base point is found by coarse sampling and then a
/// golden-section search on the fine net.
pub fn net_loop_length(s: &ConeSurface, w: &HomotopyWord, spacing: f64) -> Result<f64> {
    let n = w.len();
    if n == 0 {
        return Err(Error::Word("empty loop word".into()));
    }
    let cap = (n as f64 + 1.0) * s.diameter();
    let radius = std::cell::Cell::new(s.diameter());
    // Lifts beyond the current best are irrelevant, so they count as infinite.
    let eval = |i: usize, u: f64, fine: bool| -> Result<f64> {
        let rot = w.rotated(i);
        let x = arrival_point(s, rot.letters[n - 1], u)?;
        let tree = unfold_with(s, x, radius.get(), UnfoldOptions::default())?;
        let target = match tree.locate_lift(s, &x, &rot.letters) {
            Ok(t) => t,
            Err(Error::Unreachable(_)) => return Ok(f64::INFINITY),
            Err(e) => return Err(e),
        };
        let v = refined(s, &tree, target, if fine { spacing } else { (s.diameter() / 50.0).max(spacing) });
        let v = match v {
            Err(Error::Unreachable(_)) => f64::INFINITY,
            v => v?,
        };
        if v.is_finite() {
            radius.set(radius.get().min(v + s.diameter() / 10.0));
        }
        Ok(v)
    };
    const SAMPLES: usize = 16;
    while eval(0, 0.5, false)?.is_infinite() {
        if radius.get() >= cap {
            return Err(Error::Unreachable(cap));
        }
        radius.set((2.0 * radius.get()).min(cap));
    }
    let mut coarse = Vec::new();
    for i in 0..n {
        for k in 0..=SAMPLES {
            let u = k as f64 / SAMPLES as f64;
            coarse.push((eval(i, u, false)?, i, u));
        }
    }
    coarse.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (v, i, u) = coarse[0];
    if !v.is_finite() {
        return Err(Error::Unreachable(cap));
    }
    // Loops through a cone point often cross a side at its end, where the
    // coarse net is least reliable.
    let mut best = f64::INFINITY;
    for &(_, j, e) in coarse
        .iter()
        .filter(|c| (c.2 == 0.0 || c.2 == 1.0) && c.0 <= v * 1.01)
        .take(6)
    {
        best = best.min(eval(j, e, true)?);
    }
    let h = 1.0 / SAMPLES as f64;
    let (mut lo, mut hi) = ((u - h).max(0.0), (u + h).min(1.0));
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (hi - r * (hi - lo), lo + r * (hi - lo));
    let (mut f1, mut f2) = (eval(i, x1, true)?, eval(i, x2, true)?);
    for _ in 0..8 {
        if f1 <= f2 {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - r * (hi - lo);
            f1 = eval(i, x1, true)?;
        } else {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + r * (hi - lo);
            f2 = eval(i, x2, true)?;
        }
    }
    Ok(best.min(f1).min(f2))
}

#[cfg(test)]
mod tests;
