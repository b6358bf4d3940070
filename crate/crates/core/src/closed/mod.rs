//! Closed geodesics in free homotopy classes, found by shortening a closed
//! polyline inside its triangle corridor, and the density experiment.

mod density;
mod sleeve;

pub use density::{density_sequence, develop_near, window_tree, DensityRecord, DensityTarget};

use crate::error::{Error, Result};
use crate::geom::{line_intersection, RigidMotion};
use crate::path::{crossing_motion, edge_motion, GeodesicPath, PathEvent};
use crate::surface::{ConeKind, ConeSurface};
use crate::tolerance::{EPS_ANG, EPS_INC, EPS_STOP, EPS_TIE, MAX_ITERATIONS, MAX_REPRESENTATIVES};
use crate::word::HomotopyWord;
use sleeve::{Move, Sleeve};
use std::collections::{HashSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ClosedOptions {
    /// Relative length decrease below which a sweep counts as stalled.
    pub stop: f64,
    pub eps_ang: f64,
    pub tie: f64,
    /// Cap on sweeps for a single descent.
    pub max_iterations: usize,
    pub max_ties: usize,
    /// Look for other minimizers by sending the loop around small cones the other way.
    pub tie_search: bool,
}

impl Default for ClosedOptions {
    fn default() -> Self {
        Self {
            stop: EPS_STOP,
            eps_ang: EPS_ANG,
            tie: EPS_TIE,
            max_iterations: MAX_ITERATIONS,
            max_ties: MAX_REPRESENTATIVES,
            tie_search: true,
        }
    }
}

/// State of one shortening run.
#[derive(Clone, Debug)]
pub struct LoopState {
    pub word: HomotopyWord,
    pub path: GeodesicPath,
    pub length: f64,
    pub iterations: usize,
    /// Length after every sweep and move.
    pub history: Vec<f64>,
}

/// Minimizers of a free homotopy class, leftmost first.
#[derive(Clone, Debug)]
pub struct ClosedGeodesics {
    pub word: HomotopyWord,
    pub length: f64,
    pub paths: Vec<GeodesicPath>,
    pub iterations: usize,
    pub truncated: bool,
}

fn descend(s: &ConeSurface, mut sl: Sleeve, opts: &ClosedOptions, hist: &mut Vec<f64>) -> Result<(Sleeve, usize)> {
    let mut iters = 0;
    let mut fr = sl.frames(s);
    let mut len = sl.length(&fr);
    hist.push(len);
    loop {
        loop {
            if iters >= opts.max_iterations {
                return Err(Error::IterationCap(iters));
            }
            sl.sweep(&fr);
            iters += 1;
            let nl = sl.length(&fr);
            hist.push(nl);
            let stalled = len - nl <= opts.stop * nl;
            len = nl;
            if stalled {
                break;
            }
        }
        if let Move::Moved = sl.run_move(s, opts.eps_ang)? {
            fr = sl.frames(s);
            len = sl.length(&fr);
            hist.push(len);
            continue;
        }
        if let Some(p) = sl.polished(s) {
            let pl = p.length(&fr);
            if pl <= len * (1.0 + 1e-12) {
                sl = p;
                hist.push(pl);
                if let Move::Moved = sl.run_move(s, opts.eps_ang)? {
                    fr = sl.frames(s);
                    len = sl.length(&fr);
                    hist.push(len);
                    continue;
                }
                return Ok((sl, iters));
            }
        }
    }
}

fn checked(w: &HomotopyWord) -> Result<HomotopyWord> {
    let c = HomotopyWord { letters: w.letters.clone(), cyclic: true };
    if !c.is_reduced() {
        return Err(Error::Word("word is not cyclically reduced".into()));
    }
    if c.is_empty() {
        return Err(Error::Word("the trivial class has no closed geodesic".into()));
    }
    Ok(c)
}

/// Shorten the edge-midpoint loop of `w` to a closed geodesic.
pub fn shorten_loop(s: &ConeSurface, w: &HomotopyWord, opts: &ClosedOptions) -> Result<LoopState> {
    let w = checked(w)?;
    let mut history = Vec::new();
    let (sl, iterations) = descend(s, Sleeve::from_word(s, &w)?, opts, &mut history)?;
    let path = sl.to_path(s)?;
    Ok(LoopState { word: w, length: path.length, path, iterations, history })
}

/// Segment sequence up to cyclic rotation.
fn geometric_key(p: &GeodesicPath) -> Vec<(usize, [i64; 4])> {
    let r = |x: f64| (x * 1e6).round() as i64;
    let k: Vec<_> = p
        .segments()
        .map(|(a, b, t)| (t, [r(a.x), r(a.y), r(b.x), r(b.y)]))
        .collect();
    (0..k.len().max(1))
        .map(|i| {
            let mut v = k.clone();
            v.rotate_left(i);
            v
        })
        .min()
        .unwrap_or_default()
}

fn left_key(p: &GeodesicPath) -> f64 {
    p.passages().map(|c| c.left).sum()
}

/// All minimizers found for the class of `w`.
pub fn closed_with(s: &ConeSurface, w: &HomotopyWord, opts: &ClosedOptions) -> Result<ClosedGeodesics> {
    let w = checked(w)?;
    let mut scratch = Vec::new();
    let (first, mut iterations) = descend(s, Sleeve::from_word(s, &w)?, opts, &mut scratch)?;
    let first_path = first.to_path(s)?;
    let mut best = first_path.length;
    let mut found = vec![first_path];
    let mut truncated = false;
    let searching = opts.tie_search
        && s.classes.iter().any(|c| c.kind == ConeKind::Small && !c.boundary);
    if searching {
        let mut seen: HashSet<Vec<sleeve::Crossing>> = HashSet::from([first.key()]);
        let mut shapes: HashSet<_> = HashSet::from([geometric_key(&found[0])]);
        let mut queue = VecDeque::from([first]);
        'bfs: while let Some(cur) = queue.pop_front() {
            for run in cur.small_cone_runs(s) {
                let Some(fl) = cur.flipped(s, run) else { continue };
                if !seen.insert(fl.key()) {
                    continue;
                }
                scratch.clear();
                let Ok((res, it)) = descend(s, fl, opts, &mut scratch) else { continue };
                iterations += it;
                let Ok(path) = res.to_path(s) else { continue };
                let l = path.length;
                if l < best * (1.0 - opts.tie) {
                    best = l;
                    shapes = HashSet::from([geometric_key(&path)]);
                    found = vec![path];
                    queue = VecDeque::from([res]);
                    continue 'bfs;
                }
                if l <= best * (1.0 + opts.tie) && shapes.insert(geometric_key(&path)) {
                    found.push(path);
                    queue.push_back(res);
                    if found.len() >= opts.max_ties {
                        truncated = true;
                        break 'bfs;
                    }
                }
            }
        }
    }
    found.retain(|p| p.length <= best * (1.0 + opts.tie));
    found.sort_by(|a, b| {
        left_key(a)
            .total_cmp(&left_key(b))
            .then_with(|| geometric_key(a).cmp(&geometric_key(b)))
    });
    Ok(ClosedGeodesics { word: w, length: best, paths: found, iterations, truncated })
}

/// Minimum-length closed geodesics in the free homotopy class of `w`, leftmost first.
pub fn closed_geodesic(s: &ConeSurface, w: &HomotopyWord) -> Result<Vec<GeodesicPath>> {
    closed_with(s, w, &ClosedOptions::default()).map(|c| c.paths)
}

/// Distance between the developed start and end of a path, developing
/// straight through cone passages.
pub fn translation_length(s: &ConeSurface, path: &GeodesicPath) -> f64 {
    let mut mot = RigidMotion::IDENTITY;
    let mut prev: Option<(crate::geom::PlanarPoint, crate::geom::PlanarPoint, usize)> = None;
    let mut pending = None;
    let mut after_cone = false;
    let mut start = None;
    let mut end = None;
    for e in &path.events {
        match e {
            PathEvent::Seg { a, b, tri } => {
                if let Some((pa, pb, pt)) = prev {
                    if after_cone {
                        let at = mot.apply(pb);
                        let dir = mot.apply_vector(pb - pa);
                        mot = RigidMotion::mapping_segment(*a, *b, at, at + dir);
                    } else if pt != *tri || pending.is_some() {
                        let m = edge_motion(s, pt, *tri, pending)
                            .or_else(|| crossing_motion(s, pt, *tri))
                            .unwrap_or(RigidMotion::IDENTITY);
                        mot = mot.compose(&m.inverse());
                    }
                }
                start.get_or_insert(mot.apply(*a));
                end = Some(mot.apply(*b));
                prev = Some((*a, *b, *tri));
                pending = None;
                after_cone = false;
            }
            PathEvent::Cross(l) => pending = Some(*l),
            PathEvent::Cone(_) => after_cone = true,
        }
    }
    match (start, end) {
        (Some(a), Some(b)) => a.dist(b),
        _ => 0.0,
    }
}

/// Transversal meetings of two closed geodesics away from cone points.
///
/// A meeting on a triangle edge shows up in both adjacent charts; it is
/// counted once by keying on the pair of segments that end there.
pub fn crossing_count(s: &ConeSurface, a: &GeodesicPath, b: &GeodesicPath) -> usize {
    let sa: Vec<_> = a.segments().collect();
    let sb: Vec<_> = b.segments().collect();
    let (na, nb) = (sa.len(), sb.len());
    let mut seen = HashSet::new();
    for (i, &(p, q, t)) in sa.iter().enumerate() {
        for (j, &(r, u, t2)) in sb.iter().enumerate() {
            if t != t2 {
                continue;
            }
            let Some((x, y)) = line_intersection(p, q, r, u) else { continue };
            let (ex, ey) = (EPS_INC / p.dist(q), EPS_INC / r.dist(u));
            if x < -ex || x > 1.0 + ex || y < -ey || y > 1.0 + ey {
                continue;
            }
            if (q - p).cross(u - r).abs() <= EPS_ANG * p.dist(q) * r.dist(u) {
                continue;
            }
            if s.corner_at(t, p.lerp(q, x)).is_some() {
                continue;
            }
            let ka = if x <= ex { (i + na - 1) % na } else { i };
            let kb = if y <= ey { (j + nb - 1) % nb } else { j };
            seen.insert((ka, kb));
        }
    }
    seen.len()
}

/// Shortest loop in the class of `w` that does not cross `barrier`.
///
/// Candidates are the minimizers of the class and, for a loop in a flat
/// band, its parallel copies across the band.
pub fn constrained_shorten(s: &ConeSurface, w: &HomotopyWord, barrier: &GeodesicPath) -> Result<GeodesicPath> {
    let opts = ClosedOptions::default();
    let cg = closed_with(s, w, &opts)?;
    if let Some(p) = cg.paths.iter().find(|p| crossing_count(s, p, barrier) == 0) {
        return Ok(p.clone());
    }
    let w = checked(w)?;
    let mut scratch = Vec::new();
    let (sl, _) = descend(s, Sleeve::from_word(s, &w)?, &opts, &mut scratch)?;
    for copy in sl.band_copies(s, 64) {
        if let Ok(p) = copy.to_path(s) {
            if crossing_count(s, &p, barrier) == 0 {
                return Ok(p);
            }
        }
    }
    Err(Error::Infeasible(format!(
        "every minimizer of length {:.9} crosses the barrier",
        cg.length
    )))
}

#[cfg(test)]
mod tests;
