use super::VisibilityNode as Node;
use crate::error::{Error, Result};
use crate::fan;
use crate::geom::{line_intersection, normalize_signed, PlanarPoint};
use crate::path::{check_local_geodesic, min_clearance, GeodesicPath, PathEvent, Termination};
use crate::surface::{Adjacency, ConeKind, ConeSurface, SurfacePoint};
use crate::tolerance::{EPS_ANG, EPS_INC, EPS_TIE, MAX_CELLS, MAX_REPRESENTATIVES};
use crate::unfolding::{build, Front, Origin, Route, UnfoldOptions, UnfoldingTree};
use crate::word::HomotopyWord;
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug)]
pub struct ShortestOptions {
    pub max_cells: usize,
    pub max_representatives: usize,
    /// Relative tolerance for equal-length ties.
    pub tie: f64,
}

impl Default for ShortestOptions {
    fn default() -> Self {
        Self {
            max_cells: MAX_CELLS,
            max_representatives: MAX_REPRESENTATIVES,
            tie: EPS_TIE,
        }
    }
}

/// All minimizers found in one class, ordered from leftmost to rightmost.
#[derive(Clone, Debug)]
pub struct Minimizers {
    pub length: f64,
    pub paths: Vec<GeodesicPath>,
    /// Unfolding cell of every segment of every path (`None` outside the tree).
    pub seg_cells: Vec<Vec<Option<usize>>>,
    /// The enumeration stopped at the representative cap.
    pub truncated: bool,
    /// Candidates dropped by the local-geodesic or small-cone checks.
    pub rejected: usize,
    pub tree: UnfoldingTree,
}

#[derive(Clone, Copy, Debug)]
enum Piece {
    Route { id: usize, to: PlanarPoint },
    Local { cell: usize, a: PlanarPoint, b: PlanarPoint },
}

#[derive(Clone, Debug)]
struct VisEdge {
    from: Node,
    to: Node,
    len: f64,
    piece: Piece,
    /// Departure direction in the origin chart.
    dir_out: PlanarPoint,
    /// Fan positions when leaving or reaching a vertex.
    pos_out: Option<f64>,
    pos_in: Option<f64>,
    class_in: Option<usize>,
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

struct Graph<'a> {
    s: &'a ConeSurface,
    tree: UnfoldingTree,
    front: Front,
    edges: Vec<VisEdge>,
    out: HashMap<Node, Vec<usize>>,
    into: HashMap<Node, Vec<usize>>,
    base_class: Option<usize>,
}

fn bends(s: &ConeSurface, class: usize) -> bool {
    let c = &s.classes[class];
    if c.boundary {
        c.angle > PI + EPS_ANG
    } else {
        c.kind == ConeKind::Large
    }
}

impl<'a> Graph<'a> {
    fn new(
        s: &'a ConeSurface,
        p: SurfacePoint,
        q: SurfacePoint,
        word: &HomotopyWord,
        r_cap: f64,
        opts: &ShortestOptions,
    ) -> Result<Self> {
        let uopts = UnfoldOptions {
            max_cells: opts.max_cells,
            margin: None,
        };
        let (tree, front) = build(s, p, r_cap, uopts)?;
        let (q_cell, q_pos) = tree.locate_lift(s, &q, &word.letters)?;
        let root_tri = tree.cells[0].source;
        let base_corner = s.corner_at(root_tri, tree.base_pos);
        let base_lift = base_corner.map(|k| tree.corner_lift[0][k]);
        let target_corner = s.corner_at(tree.cells[q_cell].source, q_pos);
        let target_lift = target_corner.map(|k| tree.corner_lift[q_cell][k]);
        if base_lift.is_some() && base_lift == target_lift {
            return Err(Error::InvalidArgument("endpoints are the same point of the cover".into()));
        }
        let node_of_lift = |l: usize| -> Option<Node> {
            if Some(l) == base_lift {
                Some(Node::Base)
            } else if Some(l) == target_lift {
                Some(Node::Target)
            } else if bends(s, tree.lifts[l].class) {
                Some(Node::Lift(l))
            } else {
                None
            }
        };
        let origin_of = |o: Origin| -> Option<(Node, usize, Option<usize>, PlanarPoint)> {
            match o {
                Origin::Base => Some((Node::Base, root_tri, base_corner, tree.base_pos)),
                Origin::Corner(raw, k) => {
                    let fc = front.final_cell[raw]?;
                    let tri = front.raw_tri[raw];
                    Some((node_of_lift(tree.corner_lift[fc][k])?, tri, Some(k), s.triangles[tri].pts[k]))
                }
            }
        };
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        let mut add = |e: VisEdge| {
            if e.len <= 1e-12 || e.from == e.to || e.to == Node::Base || e.from == Node::Target {
                return;
            }
            let key = (e.from, e.to, (e.pos_out.unwrap_or_else(|| e.dir_out.angle()) * 1e7).round() as i64);
            if seen.insert(key) {
                edges.push(e);
            }
        };

        for arr in &front.arrivals {
            let Route::Window { cell, src, origin, rot, .. } = front.routes[arr.route] else { continue };
            let Some(fc) = front.final_cell[cell] else { continue };
            let Some(to) = node_of_lift(tree.corner_lift[fc][arr.corner]) else { continue };
            let Some((from, otri, ok, _)) = origin_of(origin) else { continue };
            let tri = front.raw_tri[cell];
            let o = s.triangles[tri].pts[arr.corner];
            let dir_out = (o - src).rotate(rot);
            add(VisEdge {
                from,
                to,
                len: arr.len,
                piece: Piece::Route { id: arr.route, to: o },
                dir_out,
                pos_out: ok.map(|k| fan::position_of(s, otri, k, dir_out)),
                pos_in: Some(fan::position_of(s, tri, arr.corner, src - o)),
                class_in: Some(s.corner_class[tri][arr.corner]),
            });
        }
        if target_corner.is_none() {
            for (id, r) in front.routes.iter().enumerate() {
                let Route::Window { cell, edge, src, t0, t1, origin, rot, .. } = *r else { continue };
                if front.final_cell[cell] != Some(q_cell) {
                    continue;
                }
                let (a, b) = s.triangles[front.raw_tri[cell]].edge(edge);
                let (w0, w1) = (a.lerp(b, t0), a.lerp(b, t1));
                let scale = src.dist(q_pos).max(1.0);
                let tol = 1e-12 * scale * scale;
                if (w1 - src).cross(q_pos - src) < -tol || (q_pos - src).cross(w0 - src) < -tol {
                    continue;
                }
                let Some((from, otri, ok, _)) = origin_of(origin) else { continue };
                let dir_out = (q_pos - src).rotate(rot);
                add(VisEdge {
                    from,
                    to: Node::Target,
                    len: src.dist(q_pos),
                    piece: Piece::Route { id, to: q_pos },
                    dir_out,
                    pos_out: ok.map(|k| fan::position_of(s, otri, k, dir_out)),
                    pos_in: None,
                    class_in: None,
                });
            }
        }
        // straight pieces inside a single cell
        let mut local = |cell: usize, from: Node, ka: Option<usize>, a: PlanarPoint, to: Node, kb: Option<usize>, b: PlanarPoint| {
            let tri = tree.cells[cell].source;
            add(VisEdge {
                from,
                to,
                len: a.dist(b),
                piece: Piece::Local { cell, a, b },
                dir_out: b - a,
                pos_out: ka.map(|k| fan::position_of(s, tri, k, b - a)),
                pos_in: kb.map(|k| fan::position_of(s, tri, k, a - b)),
                class_in: kb.map(|k| s.corner_class[tri][k]),
            });
        };
        if base_corner.is_none() {
            let t = &s.triangles[root_tri];
            for k in 0..3 {
                if let Some(to) = node_of_lift(tree.corner_lift[0][k]) {
                    local(0, Node::Base, None, tree.base_pos, to, Some(k), t.pts[k]);
                }
            }
            if q_cell == 0 && target_corner.is_none() {
                local(0, Node::Base, None, tree.base_pos, Node::Target, None, q_pos);
            }
        }
        for (l, lift) in tree.lifts.iter().enumerate() {
            let Some(from) = node_of_lift(l) else { continue };
            if from == Node::Target {
                continue;
            }
            for &(c, k) in &lift.corners {
                let t = &s.triangles[tree.cells[c].source];
                for k2 in [(k + 1) % 3, (k + 2) % 3] {
                    if let Some(to) = node_of_lift(tree.corner_lift[c][k2]) {
                        local(c, from, Some(k), t.pts[k], to, Some(k2), t.pts[k2]);
                    }
                }
                if c == q_cell && target_corner.is_none() {
                    local(c, from, Some(k), t.pts[k], Node::Target, None, q_pos);
                }
            }
        }
        let base_class = base_corner.map(|k| s.corner_class[root_tri][k]);
        let mut g = Self {
            s,
            tree,
            front,
            edges,
            out: HashMap::new(),
            into: HashMap::new(),
            base_class,
        };
        // a straight piece through a bending vertex duplicates the chain that stops there
        let keep: Vec<bool> = g.edges.iter().map(|e| !g.passes_bending_vertex(e)).collect();
        let mut i = 0;
        g.edges.retain(|_| {
            i += 1;
            keep[i - 1]
        });
        for (i, e) in g.edges.iter().enumerate() {
            g.out.entry(e.from).or_default().push(i);
            g.into.entry(e.to).or_default().push(i);
        }
        Ok(g)
    }

    fn passes_bending_vertex(&self, e: &VisEdge) -> bool {
        let mut events = Vec::new();
        let mut cells = Vec::new();
        self.piece_events(e, &mut events, &mut cells);
        let segs: Vec<_> = events
            .iter()
            .filter_map(|ev| match ev {
                PathEvent::Seg { a, b, tri } => Some((*a, *b, *tri)),
                _ => None,
            })
            .collect();
        let n = segs.len();
        segs.iter().enumerate().any(|(i, &(a, b, tri))| {
            let mut pts = Vec::new();
            if i > 0 {
                pts.push(a);
            }
            if i + 1 < n {
                pts.push(b);
            }
            pts.into_iter().any(|x| {
                self.s
                    .corner_at(tri, x)
                    .is_some_and(|k| bends(self.s, self.s.corner_class[tri][k]))
            })
        })
    }

    /// Whether leaving along `b` right after arriving along `a` is locally geodesic.
    fn compatible(&self, a: usize, b: usize) -> bool {
        let (a, b) = (&self.edges[a], &self.edges[b]);
        let (Some(pin), Some(pout), Some(class)) = (a.pos_in, b.pos_out, a.class_in) else {
            return false;
        };
        let c = &self.s.classes[class];
        if c.boundary {
            (pin - pout).abs() >= PI - EPS_ANG
        } else {
            let left = (pin - pout).rem_euclid(c.angle);
            left >= PI - EPS_ANG && c.angle - left >= PI - EPS_ANG
        }
    }

    fn successors(&self, a: Option<usize>) -> Vec<usize> {
        match a {
            None => self.out.get(&Node::Base).cloned().unwrap_or_default(),
            Some(a) => self
                .out
                .get(&self.edges[a].to)
                .map(|v| v.iter().copied().filter(|&b| self.compatible(a, b)).collect())
                .unwrap_or_default(),
        }
    }

    /// Shortest remaining length from the start of each edge to the target.
    fn rest(&self) -> Vec<f64> {
        let mut rest = vec![f64::INFINITY; self.edges.len()];
        let mut heap = BinaryHeap::new();
        for &e in self.into.get(&Node::Target).into_iter().flatten() {
            rest[e] = self.edges[e].len;
            heap.push(Item(rest[e], e));
        }
        while let Some(Item(d, b)) = heap.pop() {
            if d > rest[b] {
                continue;
            }
            for &a in self.into.get(&self.edges[b].from).into_iter().flatten() {
                if !self.compatible(a, b) {
                    continue;
                }
                let nd = self.edges[a].len + d;
                if nd < rest[a] {
                    rest[a] = nd;
                    heap.push(Item(nd, a));
                }
            }
        }
        rest
    }

    /// Order candidate departures from leftmost to rightmost.
    fn sort_left_first(&self, prev: Option<usize>, cands: &mut [usize]) {
        match prev {
            Some(a) => {
                let pin = self.edges[a].pos_in.unwrap_or(0.0);
                let c = &self.s.classes[self.edges[a].class_in.unwrap_or(0)];
                let key = |b: usize| {
                    let pout = self.edges[b].pos_out.unwrap_or(0.0);
                    if c.boundary {
                        pin - pout
                    } else {
                        (pin - pout).rem_euclid(c.angle)
                    }
                };
                cands.sort_by(|&x, &y| key(x).total_cmp(&key(y)));
            }
            None => match self.base_class {
                Some(class) => {
                    let theta = self.s.classes[class].angle;
                    let Some(&first) = cands.first() else { return };
                    let r = self.edges[first].pos_out.unwrap_or(0.0);
                    let key = |b: usize| {
                        let d = (self.edges[b].pos_out.unwrap_or(0.0) - r).rem_euclid(theta);
                        if d > theta / 2.0 {
                            d - theta
                        } else {
                            d
                        }
                    };
                    cands.sort_by(|&x, &y| key(y).total_cmp(&key(x)));
                }
                None => {
                    let Some(&first) = cands.first() else { return };
                    let r = self.edges[first].dir_out.angle();
                    let key = |b: usize| normalize_signed(self.edges[b].dir_out.angle() - r);
                    cands.sort_by(|&x, &y| key(y).total_cmp(&key(x)));
                }
            },
        }
    }

    /// Enumerate every chain within the tie tolerance, leftmost first.
    fn enumerate(&self, rest: &[f64], best: f64, tol: f64, cap: usize, reverse: bool) -> (Vec<Vec<usize>>, bool) {
        let mut found = Vec::new();
        let mut truncated = false;
        let mut chain = Vec::new();
        self.dfs(rest, best + tol, 0.0, &mut chain, &mut found, cap, reverse, &mut truncated);
        (found, truncated)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        rest: &[f64],
        bound: f64,
        len: f64,
        chain: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
        cap: usize,
        reverse: bool,
        truncated: &mut bool,
    ) {
        let mut cands: Vec<usize> = self
            .successors(chain.last().copied())
            .into_iter()
            .filter(|&b| len + rest[b] <= bound)
            .collect();
        self.sort_left_first(chain.last().copied(), &mut cands);
        if reverse {
            cands.reverse();
        }
        for b in cands {
            if found.len() >= cap {
                *truncated = true;
                return;
            }
            chain.push(b);
            if self.edges[b].to == Node::Target {
                found.push(chain.clone());
            } else {
                self.dfs(rest, bound, len + self.edges[b].len, chain, found, cap, reverse, truncated);
            }
            chain.pop();
        }
    }

    fn piece_events(&self, e: &VisEdge, events: &mut Vec<PathEvent>, cells: &mut Vec<Option<usize>>) {
        let s = self.s;
        match e.piece {
            Piece::Local { cell, a, b } => {
                events.push(PathEvent::Seg { a, b, tri: self.tree.cells[cell].source });
                cells.push(Some(cell));
            }
            Piece::Route { id, to } => {
                let mut rev = Vec::new();
                let mut rev_cells = Vec::new();
                let mut t = to;
                let mut r = Some(id);
                let mut origin = Origin::Base;
                while let Some(i) = r {
                    let Route::Window { cell, edge, src, origin: o, parent, .. } = self.front.routes[i] else { break };
                    let tri = self.front.raw_tri[cell];
                    let (a, b) = s.triangles[tri].edge(edge);
                    let entry = match line_intersection(src, t, a, b) {
                        Some((_, u)) => a.lerp(b, u.clamp(0.0, 1.0)),
                        None => src,
                    };
                    rev.push(PathEvent::Seg { a: entry, b: t, tri });
                    rev_cells.push(self.front.final_cell[cell]);
                    let Adjacency::Interior { letter, motion, .. } = s.triangles[tri].adj[edge] else { break };
                    if let Some(l) = letter {
                        rev.push(PathEvent::Cross(l.inv()));
                    }
                    t = motion.apply(entry);
                    origin = o;
                    r = parent;
                }
                let (otri, ocell, opt) = match origin {
                    Origin::Base => (self.tree.cells[0].source, Some(0), self.tree.base_pos),
                    Origin::Corner(raw, k) => {
                        let tri = self.front.raw_tri[raw];
                        (tri, self.front.final_cell[raw], s.triangles[tri].pts[k])
                    }
                };
                rev.push(PathEvent::Seg { a: opt, b: t, tri: otri });
                rev_cells.push(ocell);
                let mut ci = rev_cells.into_iter().rev();
                for ev in rev.into_iter().rev() {
                    if matches!(ev, PathEvent::Seg { .. }) {
                        cells.push(ci.next().flatten());
                    }
                    events.push(ev);
                }
            }
        }
    }

    fn path_of(&self, chain: &[usize], p: SurfacePoint, q: SurfacePoint) -> (GeodesicPath, Vec<Option<usize>>) {
        let mut events = Vec::new();
        let mut cells = Vec::new();
        for (i, &e) in chain.iter().enumerate() {
            if i > 0 {
                let a = &self.edges[chain[i - 1]];
                let b = &self.edges[e];
                if let (Some(class), Some(pin), Some(pout)) = (a.class_in, a.pos_in, b.pos_out) {
                    events.push(PathEvent::Cone(fan::passage(self.s, class, pin, pout)));
                }
            }
            self.piece_events(&self.edges[e], &mut events, &mut cells);
        }
        (GeodesicPath::from_events(events, p, q, false, Termination::Length), cells)
    }
}

/// All global minimizers from `p` to the lift of `q` reached along `word`.
pub fn shortest_segment(
    s: &ConeSurface,
    p: SurfacePoint,
    q_lift: (SurfacePoint, HomotopyWord),
    r_cap: f64,
) -> Result<Vec<GeodesicPath>> {
    shortest_with(s, p, q_lift, r_cap, &ShortestOptions::default()).map(|m| m.paths)
}

pub fn shortest_with(
    s: &ConeSurface,
    p: SurfacePoint,
    (q, word): (SurfacePoint, HomotopyWord),
    r_cap: f64,
    opts: &ShortestOptions,
) -> Result<Minimizers> {
    let g = Graph::new(s, p, q, &word.as_linear(), r_cap, opts)?;
    let rest = g.rest();
    let best = g
        .out
        .get(&Node::Base)
        .into_iter()
        .flatten()
        .map(|&e| rest[e])
        .fold(f64::INFINITY, f64::min);
    if !best.is_finite() || best >= r_cap {
        return Err(Error::Unreachable(r_cap));
    }
    let tol = opts.tie * best + 1e-12;
    let (chains, truncated) = g.enumerate(&rest, best, tol, opts.max_representatives, false);
    let mut chains = chains;
    if truncated {
        // keep the true rightmost chain as the last member
        let (right, _) = g.enumerate(&rest, best, tol, 1, true);
        chains.extend(right);
    }
    let small_end = |x: &SurfacePoint| match *x {
        SurfacePoint::Vertex { class } => s.classes[class].kind == ConeKind::Small,
        _ => false,
    };
    let check_small = !small_end(&p) && !small_end(&q);
    let mut paths = Vec::new();
    let mut seg_cells = Vec::new();
    let mut rejected = 0;
    for c in &chains {
        let (path, cells) = g.path_of(c, p, q);
        let ok = check_local_geodesic(s, &path).is_local_geodesic
            && (!check_small || min_clearance(s, &path, true).value() > EPS_INC);
        if ok {
            paths.push(path);
            seg_cells.push(cells);
        } else {
            rejected += 1;
        }
    }
    if paths.is_empty() {
        return Err(Error::Unreachable(r_cap));
    }
    Ok(Minimizers {
        length: best,
        paths,
        seg_cells,
        truncated,
        rejected,
        tree: g.tree,
    })
}

/// [`shortest_with`] with the radius grown from the surface diameter until
/// the minimizers fit.
pub fn shortest_grown(
    s: &ConeSurface,
    p: SurfacePoint,
    (q, w): (SurfacePoint, HomotopyWord),
    opts: &ShortestOptions,
) -> Result<Minimizers> {
    let cap = (w.len() as f64 + 2.0) * s.diameter();
    let mut radius = s.diameter();
    loop {
        match shortest_with(s, p, (q, w.clone()), radius, opts) {
            Ok(m) if m.length <= radius => return Ok(m),
            Ok(m) => radius = m.length * (1.0 + 1e-9),
            Err(Error::Unreachable(_)) if radius < cap => radius = (2.0 * radius).min(cap),
            Err(e) => return Err(e),
        }
    }
}
