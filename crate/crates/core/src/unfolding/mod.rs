//! Finite-radius developments of the universal cover.
//!
//! Cells are lifted triangles. They are grown breadth-first across edges in
//! order of developed distance; when a vertex fan closes up, the duplicate
//! cell produced by walking around the vertex is identified with the
//! original (coincidence processing with a union-find, as in coset
//! enumeration). The final tree is then re-developed from the root so that
//! every child motion is its parent motion composed with the crossing.

mod develop;
mod svg;

pub use develop::{develop_path, DevelopedPath};
pub use svg::{render_svg, SvgMark, SvgPath};

use crate::error::{Error, Result};
use crate::geom::{PlanarPoint, RigidMotion};
use crate::surface::{Adjacency, ConeSurface, SurfacePoint};
use crate::tolerance::MAX_CELLS;
use crate::word::{HomotopyWord, Letter};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq)]
pub struct UnfoldedCell {
    pub id: usize,
    pub source: usize,
    pub motion: RigidMotion,
    /// Parent cell and the edge of this cell crossed to reach it.
    pub parent: Option<(usize, usize)>,
    pub word: HomotopyWord,
    pub neighbors: [Option<usize>; 3],
    /// Distance from the base point to the developed triangle.
    pub distance: f64,
}

/// One lift of a vertex class: the cell corners sharing a point of the cover.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexLift {
    pub class: usize,
    pub corners: Vec<(usize, usize)>,
    /// Every corner of the class fan is present.
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct UnfoldingTree {
    pub base: SurfacePoint,
    /// Base point in the root chart (which is also the developed plane).
    pub base_pos: PlanarPoint,
    pub radius: f64,
    pub root: usize,
    pub cells: Vec<UnfoldedCell>,
    pub lifts: Vec<VertexLift>,
    /// Lift id of every cell corner.
    pub corner_lift: Vec<[usize; 3]>,
}

#[derive(Clone, Copy, Debug)]
pub struct UnfoldOptions {
    pub max_cells: usize,
    /// Extra radius grown before trimming so that fans near the rim close up.
    pub margin: Option<f64>,
}

impl Default for UnfoldOptions {
    fn default() -> Self {
        Self {
            max_cells: MAX_CELLS,
            margin: None,
        }
    }
}

struct RawCell {
    tri: usize,
    motion: RigidMotion,
    nbr: [Option<usize>; 3],
    /// Best known distance from the base to this cell.
    key: f64,
}

#[derive(PartialEq)]
struct QueueItem {
    key: f64,
    id: usize,
}

impl Eq for QueueItem {}

impl Ord for QueueItem {
    fn cmp(&self, o: &Self) -> Ordering {
        o.key.total_cmp(&self.key).then_with(|| o.id.cmp(&self.id))
    }
}

impl PartialOrd for QueueItem {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A front of straight geodesics. `Window` carries the rays from `src` (in the
/// chart of `cell`) through the part `[t0, t1]` of the entry edge; `Vertex`
/// restarts the front at a corner reached at distance `d0`.
#[derive(Clone, Copy)]
pub(crate) enum Route {
    Window {
        cell: usize,
        edge: usize,
        src: PlanarPoint,
        t0: f64,
        t1: f64,
        d0: f64,
        origin: Origin,
        parent: Option<usize>,
        /// Rotation taking this chart's vectors into the origin's chart.
        rot: f64,
    },
    Vertex {
        cell: usize,
        corner: usize,
        d0: f64,
    },
}

/// Where a straight front starts: the base point, or a corner of a raw cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Origin {
    Base,
    Corner(usize, usize),
}

/// A front reaching a corner in its wedge.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Arrival {
    pub route: usize,
    pub corner: usize,
    pub len: f64,
}

/// Everything the builder learned, kept for visibility queries.
pub(crate) struct Front {
    pub routes: Vec<Route>,
    pub arrivals: Vec<Arrival>,
    /// Final cell id of each raw cell, if it survived trimming.
    pub final_cell: Vec<Option<usize>>,
    pub raw_tri: Vec<usize>,
}

struct Builder<'a> {
    s: &'a ConeSurface,
    cells: Vec<RawCell>,
    uf: Vec<usize>,
    routes: Vec<Route>,
    arrivals: Vec<Arrival>,
    current: Option<usize>,
    heap: BinaryHeap<QueueItem>,
    vertex_seen: HashMap<(usize, usize), f64>,
    limit: f64,
    max_cells: usize,
}

fn developed(s: &ConeSurface, tri: usize, m: &RigidMotion) -> [PlanarPoint; 3] {
    let t = &s.triangles[tri];
    [m.apply(t.pts[0]), m.apply(t.pts[1]), m.apply(t.pts[2])]
}

/// Parameter interval of edge `a→b` inside the wedge from `src` spanned
/// counter-clockwise from `w0` to `w1`.
fn wedge_interval(src: PlanarPoint, w0: PlanarPoint, w1: PlanarPoint, a: PlanarPoint, b: PlanarPoint) -> Option<(f64, f64)> {
    let mut lo: f64 = 0.0;
    let mut hi: f64 = 1.0;
    // c0 + u·c1 >= -tol
    for (c0, c1) in [
        ((w0 - src).cross(a - src), (w0 - src).cross(b - a)),
        ((a - src).cross(w1 - src), (b - a).cross(w1 - src)),
    ] {
        if c1.abs() <= 1e-300 {
            if c0 < 0.0 {
                return None;
            }
        } else if c1 > 0.0 {
            lo = lo.max(-c0 / c1);
        } else {
            hi = hi.min(-c0 / c1);
        }
    }
    // slivers along an edge through a vertex would circle the vertex forever
    (hi - lo > 1e-9).then_some((lo.max(0.0), hi.min(1.0)))
}

impl<'a> Builder<'a> {
    fn find(&mut self, mut x: usize) -> usize {
        while self.uf[x] != x {
            self.uf[x] = self.uf[self.uf[x]];
            x = self.uf[x];
        }
        x
    }

    fn nbr(&mut self, c: usize, e: usize) -> Option<usize> {
        let n = self.cells[c].nbr[e]?;
        Some(self.find(n))
    }

    fn push_cell(&mut self, tri: usize, motion: RigidMotion, key: f64) -> Result<usize> {
        if self.cells.len() >= self.max_cells {
            return Err(Error::ResourceCap(format!(
                "unfolding needs more than {} cells",
                self.max_cells
            )));
        }
        let id = self.cells.len();
        self.cells.push(RawCell {
            tri,
            motion,
            nbr: [None; 3],
            key,
        });
        self.uf.push(id);
        Ok(id)
    }

    fn push_route(&mut self, key: f64, r: Route) -> Result<()> {
        if self.routes.len() >= 8 * self.max_cells {
            return Err(Error::ResourceCap("unfolding front grew too large".into()));
        }
        self.heap.push(QueueItem {
            key,
            id: self.routes.len(),
        });
        self.routes.push(r);
        Ok(())
    }

    /// Neighbor of `c` across edge `e`, created if missing.
    fn neighbor(&mut self, c: usize, e: usize, key: f64) -> Result<Option<(usize, usize, RigidMotion)>> {
        let Adjacency::Interior { edge: ne, motion, tri: nt, .. } = self.s.triangles[self.cells[c].tri].adj[e] else {
            return Ok(None);
        };
        let n = match self.nbr(c, e) {
            Some(n) => n,
            None => {
                let m = self.cells[c].motion.compose(&motion.inverse());
                let n = self.push_cell(nt, m, key)?;
                self.cells[c].nbr[e] = Some(n);
                self.cells[n].nbr[ne] = Some(c);
                self.close_fans(n);
                self.find(n)
            }
        };
        if key < self.cells[n].key {
            self.cells[n].key = key;
        }
        Ok(Some((n, ne, motion)))
    }

    /// Step around the vertex at corner `k` of cell `c`; counter-clockwise
    /// crosses edge `k-1`, clockwise crosses edge `k`.
    fn step(&mut self, c: usize, k: usize, ccw: bool) -> Option<(usize, usize)> {
        let e = if ccw { (k + 2) % 3 } else { k };
        let (_, ne) = self.s.triangles[self.cells[c].tri].adj[e].neighbor()?;
        let n = self.nbr(c, e)?;
        Some((n, if ccw { ne } else { (ne + 1) % 3 }))
    }

    fn walk(&mut self, c: usize, k: usize, ccw: bool, m: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let (mut x, mut kx) = (c, k);
        while out.len() < m {
            match self.step(x, kx, ccw) {
                Some((y, ky)) => {
                    out.push(y);
                    x = y;
                    kx = ky;
                }
                None => break,
            }
        }
        out
    }

    fn close_fans(&mut self, start: usize) {
        let mut work = vec![start];
        while let Some(c) = work.pop() {
            let c = self.find(c);
            for k in 0..3 {
                let cp = &self.s.classes[self.s.corner_class[self.cells[c].tri][k]];
                if cp.boundary {
                    continue;
                }
                let m = cp.fan.len();
                let ccw = self.walk(c, k, true, m);
                let cw = self.walk(c, k, false, m);
                let mut pairs = Vec::new();
                if ccw.len() == m {
                    pairs.push((c, ccw[m - 1]));
                }
                if cw.len() == m {
                    pairs.push((c, cw[m - 1]));
                }
                for (i, &a) in ccw.iter().enumerate() {
                    let pos = i + 1;
                    if pos < m && m - pos <= cw.len() {
                        pairs.push((a, cw[m - pos - 1]));
                    }
                }
                let mut merged = false;
                for (a, b) in pairs {
                    merged |= self.merge(a, b, &mut work);
                }
                if merged {
                    work.push(c);
                    break;
                }
            }
        }
    }

    fn merge(&mut self, a: usize, b: usize, work: &mut Vec<usize>) -> bool {
        let mut queue = VecDeque::from([(a, b)]);
        let mut any = false;
        while let Some((a, b)) = queue.pop_front() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            debug_assert_eq!(self.cells[ra].tri, self.cells[rb].tri);
            let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.uf[drop] = keep;
            any = true;
            self.cells[keep].key = self.cells[keep].key.min(self.cells[drop].key);
            for e in 0..3 {
                match (self.cells[keep].nbr[e], self.cells[drop].nbr[e]) {
                    (Some(x), Some(y)) => queue.push_back((x, y)),
                    (None, Some(y)) => self.cells[keep].nbr[e] = Some(y),
                    _ => {}
                }
            }
            work.push(keep);
        }
        any
    }

    /// Send the front from `src` through part `[u0, u1]` of edge `f` of `c`.
    #[allow(clippy::too_many_arguments)]
    fn cross(
        &mut self,
        c: usize,
        f: usize,
        src: PlanarPoint,
        (u0, u1): (f64, f64),
        d0: f64,
        origin: Origin,
        rot: f64,
    ) -> Result<()> {
        let (a, b) = self.s.triangles[self.cells[c].tri].edge(f);
        let key = d0 + crate::geom::point_segment_distance(src, a.lerp(b, u0), a.lerp(b, u1));
        if key >= self.limit {
            return Ok(());
        }
        let Some((n, ne, motion)) = self.neighbor(c, f, key)? else {
            return Ok(());
        };
        let route = Route::Window {
            cell: n,
            edge: ne,
            src: motion.apply(src),
            t0: 1.0 - u1,
            t1: 1.0 - u0,
            d0,
            origin,
            parent: self.current,
            rot: rot - motion.rotation,
        };
        self.push_route(key, route)
    }

    fn reach_vertex(&mut self, c: usize, k: usize, d: f64) -> Result<()> {
        let cp = self.s.class_of(self.cells[c].tri, k);
        // only large cones and reflex boundary corners can bend a shortest path
        let bends = if cp.boundary {
            cp.angle > std::f64::consts::PI + crate::tolerance::EPS_ANG
        } else {
            cp.kind == crate::surface::ConeKind::Large
        };
        if bends && d < self.limit {
            self.push_route(d, Route::Vertex { cell: c, corner: k, d0: d })?;
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        while let Some(QueueItem { id, .. }) = self.heap.pop() {
            self.current = None;
            match self.routes[id] {
                Route::Window { cell, edge: e, src, t0, t1, d0, origin, rot, .. } => {
                    self.current = Some(id);
                    let c = self.find(cell);
                    let t = &self.s.triangles[self.cells[c].tri];
                    let (a, b) = t.edge(e);
                    let (w0, w1) = (a.lerp(b, t0), a.lerp(b, t1));
                    let apex = (e + 2) % 3;
                    let o = t.pts[apex];
                    let in_wedge = (w1 - src).cross(o - src) >= -1e-12 && (o - src).cross(w0 - src) >= -1e-12;
                    let edges = [(e + 1) % 3, (e + 2) % 3].map(|f| (f, t.edge(f)));
                    if in_wedge {
                        self.arrivals.push(Arrival {
                            route: id,
                            corner: apex,
                            len: src.dist(o),
                        });
                        self.reach_vertex(c, apex, d0 + src.dist(o))?;
                    }
                    for (f, (fa, fb)) in edges {
                        if let Some(w) = wedge_interval(src, w1, w0, fa, fb) {
                            self.cross(c, f, src, w, d0, origin, rot)?;
                        }
                    }
                }
                Route::Vertex { cell, corner: k, d0 } => {
                    let c = self.find(cell);
                    if self.vertex_seen.get(&(c, k)).is_some_and(|&d| d <= d0 + 1e-12) {
                        continue;
                    }
                    self.vertex_seen.insert((c, k), d0);
                    let p = self.s.triangles[self.cells[c].tri].pts[k];
                    self.cross(c, (k + 1) % 3, p, (0.0, 1.0), d0, Origin::Corner(c, k), 0.0)?;
                    for (e, ccw) in [(k, false), ((k + 2) % 3, true)] {
                        let c = self.find(c);
                        if let Some((n, ne, _)) = self.neighbor(c, e, d0)? {
                            let nk = if ccw { ne } else { (ne + 1) % 3 };
                            self.push_route(d0, Route::Vertex { cell: n, corner: nk, d0 })?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Develop the universal cover around `base` out to radius `radius`.
pub fn unfold_disk(s: &ConeSurface, base: SurfacePoint, radius: f64) -> Result<UnfoldingTree> {
    if matches!(base, SurfacePoint::Vertex { .. }) {
        return Err(Error::StartOnCone);
    }
    unfold_with(s, base, radius, UnfoldOptions::default())
}

/// Like [`unfold_disk`] but also accepts a vertex as the base point.
pub fn unfold_with(
    s: &ConeSurface,
    base: SurfacePoint,
    radius: f64,
    opts: UnfoldOptions,
) -> Result<UnfoldingTree> {
    build(s, base, radius, opts).map(|(t, _)| t)
}

pub(crate) fn build(
    s: &ConeSurface,
    base: SurfacePoint,
    radius: f64,
    opts: UnfoldOptions,
) -> Result<(UnfoldingTree, Front)> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let (root_tri, base_pos) = s.chart_of(&base);
    let margin = opts.margin.unwrap_or(0.25 * s.max_edge());
    let mut b = Builder {
        s,
        cells: Vec::new(),
        uf: Vec::new(),
        routes: Vec::new(),
        arrivals: Vec::new(),
        current: None,
        heap: BinaryHeap::new(),
        vertex_seen: HashMap::new(),
        limit: radius + margin,
        max_cells: opts.max_cells,
    };
    let root = b.push_cell(root_tri, RigidMotion::IDENTITY, 0.0)?;
    if let Some(k) = s.corner_at(root_tri, base_pos) {
        b.push_route(0.0, Route::Vertex { cell: root, corner: k, d0: 0.0 })?;
    } else {
        for k in 0..3 {
            let d = base_pos.dist(s.triangles[root_tri].pts[k]);
            b.reach_vertex(root, k, d)?;
        }
        for f in 0..3 {
            b.cross(root, f, base_pos, (0.0, 1.0), 0.0, Origin::Base, 0.0)?;
        }
    }
    b.run()?;

    // re-develop from the root along a shortest-key spanning tree, trimmed to the disk
    let nraw = b.cells.len();
    let mut new_id = vec![usize::MAX; nraw];
    let mut cells: Vec<UnfoldedCell> = Vec::new();
    let mut heap = BinaryHeap::new();
    let root = b.find(root);
    new_id[root] = 0;
    cells.push(UnfoldedCell {
        id: 0,
        source: root_tri,
        motion: RigidMotion::IDENTITY,
        parent: None,
        word: HomotopyWord::default(),
        neighbors: [None; 3],
        distance: 0.0,
    });
    heap.push(QueueItem { key: 0.0, id: root });
    let mut done = vec![false; nraw];
    while let Some(QueueItem { id: raw, .. }) = heap.pop() {
        if done[raw] {
            continue;
        }
        done[raw] = true;
        let cid = new_id[raw];
        for e in 0..3 {
            let Some(nraw_id) = b.nbr(raw, e) else { continue };
            let key = b.cells[nraw_id].key;
            if new_id[nraw_id] != usize::MAX || key >= radius {
                continue;
            }
            let Adjacency::Interior { edge: ne, motion, letter, .. } = s.triangles[cells[cid].source].adj[e] else {
                continue;
            };
            let mut word = cells[cid].word.clone();
            if let Some(l) = letter {
                word.push(l);
            }
            let id = cells.len();
            new_id[nraw_id] = id;
            cells.push(UnfoldedCell {
                id,
                source: b.cells[nraw_id].tri,
                motion: cells[cid].motion.compose(&motion.inverse()),
                parent: Some((cid, ne)),
                word,
                neighbors: [None; 3],
                distance: key,
            });
            heap.push(QueueItem { key, id: nraw_id });
        }
    }
    let mut raw_of = vec![0usize; cells.len()];
    for r in 0..nraw {
        if b.find(r) == r && new_id[r] != usize::MAX {
            raw_of[new_id[r]] = r;
        }
    }
    for cid in 0..cells.len() {
        let raw = raw_of[cid];
        for e in 0..3 {
            if let Some(n) = b.nbr(raw, e) {
                if new_id[n] != usize::MAX {
                    cells[cid].neighbors[e] = Some(new_id[n]);
                }
            }
        }
    }
    let (lifts, corner_lift) = vertex_lifts(s, &cells);
    let final_cell = (0..nraw)
        .map(|r| {
            let f = b.find(r);
            (new_id[f] != usize::MAX).then_some(new_id[f])
        })
        .collect();
    let tree = UnfoldingTree {
        base,
        base_pos,
        radius,
        root: 0,
        cells,
        lifts,
        corner_lift,
    };
    let front = Front {
        routes: b.routes,
        arrivals: b.arrivals,
        final_cell,
        raw_tri: b.cells.iter().map(|c| c.tri).collect(),
    };
    Ok((tree, front))
}

fn vertex_lifts(s: &ConeSurface, cells: &[UnfoldedCell]) -> (Vec<VertexLift>, Vec<[usize; 3]>) {
    let n = cells.len() * 3;
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for c in cells {
        for e in 0..3 {
            if let Some(nb) = c.neighbors[e] {
                let (_, ne) = s.triangles[c.source].adj[e].neighbor().expect("neighbor implies adjacency");
                for (a, b) in [(c.id * 3 + e, nb * 3 + (ne + 1) % 3), (c.id * 3 + (e + 1) % 3, nb * 3 + ne)] {
                    let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                    if ra != rb {
                        uf[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    let mut lift_of_root = std::collections::HashMap::new();
    let mut lifts: Vec<VertexLift> = Vec::new();
    let mut corner_lift = vec![[0usize; 3]; cells.len()];
    for c in cells {
        for k in 0..3 {
            let r = find(&mut uf, c.id * 3 + k);
            let id = *lift_of_root.entry(r).or_insert_with(|| {
                lifts.push(VertexLift {
                    class: s.corner_class[c.source][k],
                    corners: Vec::new(),
                    complete: false,
                });
                lifts.len() - 1
            });
            lifts[id].corners.push((c.id, k));
            corner_lift[c.id][k] = id;
        }
    }
    for l in &mut lifts {
        l.complete = l.corners.len() == s.classes[l.class].fan.len();
    }
    (lifts, corner_lift)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellDoc {
    pub id: usize,
    pub source: usize,
    pub word: String,
    pub motion: RigidMotion,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeDoc {
    pub radius: f64,
    pub base: [f64; 2],
    pub cells: Vec<CellDoc>,
}

impl UnfoldingTree {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn developed_triangle(&self, s: &ConeSurface, cell: usize) -> [PlanarPoint; 3] {
        developed(s, self.cells[cell].source, &self.cells[cell].motion)
    }

    pub fn to_doc(&self, s: &ConeSurface) -> TreeDoc {
        TreeDoc {
            radius: self.radius,
            base: [self.base_pos.x, self.base_pos.y],
            cells: self
                .cells
                .iter()
                .map(|c| CellDoc {
                    id: c.id,
                    source: c.source,
                    word: c.word.format(&s.labels),
                    motion: c.motion,
                    parent: c.parent.map(|p| p.0),
                })
                .collect(),
        }
    }

    /// Cells of the polygon copy containing `cell`, reachable through diagonals.
    fn polygon_copy(&self, s: &ConeSurface, cell: usize) -> Vec<usize> {
        let mut seen = vec![cell];
        let mut i = 0;
        while i < seen.len() {
            let c = seen[i];
            for e in 0..3 {
                if let Adjacency::Interior { letter: None, .. } = s.triangles[self.cells[c].source].adj[e] {
                    if let Some(n) = self.cells[c].neighbors[e] {
                        if !seen.contains(&n) {
                            seen.push(n);
                        }
                    }
                }
            }
            i += 1;
        }
        seen
    }

    /// Follow the crossing sequence `word` from the root cell.
    pub fn walk_word(&self, s: &ConeSurface, word: &[Letter]) -> Result<usize> {
        let mut cell = self.root;
        for (i, l) in word.iter().enumerate() {
            let g = s
                .gluings
                .get(l.gluing)
                .ok_or_else(|| Error::Word(format!("no gluing {}", l.gluing)))?;
            let from = if l.inverse { g.side_a } else { g.side_b };
            let (tri, e) = s.polygon_edge_tri[from.polygon][from.edge];
            let copy = self.polygon_copy(s, cell);
            let Some(&c) = copy.iter().find(|&&c| self.cells[c].source == tri) else {
                if s.triangles[self.cells[cell].source].polygon != from.polygon {
                    return Err(Error::Word(format!(
                        "letter {} at position {i} does not leave polygon `{}`",
                        l.label(&s.labels),
                        s.polygons[s.triangles[self.cells[cell].source].polygon].id
                    )));
                }
                return Err(Error::Unreachable(self.radius));
            };
            cell = self.cells[c].neighbors[e].ok_or(Error::Unreachable(self.radius))?;
        }
        Ok(cell)
    }

    /// Cell and chart position of the lift of `target` reached along `word`.
    pub fn locate_lift(
        &self,
        s: &ConeSurface,
        target: &SurfacePoint,
        word: &[Letter],
    ) -> Result<(usize, PlanarPoint)> {
        let cell = self.walk_word(s, word)?;
        let copy = self.polygon_copy(s, cell);
        let mut copy_sorted = copy.clone();
        copy_sorted.sort_unstable();
        match *target {
            SurfacePoint::Chart { tri, pos } => copy_sorted
                .iter()
                .find(|&&c| self.cells[c].source == tri)
                .map(|&c| (c, pos))
                .ok_or(Error::Unreachable(self.radius)),
            SurfacePoint::Vertex { class } => {
                let poly = s.triangles[self.cells[cell].source].polygon;
                let nverts = s.polygons[poly].vertices.len();
                for v in 0..nverts {
                    for &c in &copy_sorted {
                        let t = &s.triangles[self.cells[c].source];
                        for k in 0..3 {
                            if t.vertex_ids[k] == v && s.corner_class[self.cells[c].source][k] == class {
                                return Ok((c, t.pts[k]));
                            }
                        }
                    }
                }
                Err(Error::Word(format!(
                    "vertex class {class} does not occur in the final polygon"
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests;
