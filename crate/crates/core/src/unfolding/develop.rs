use super::UnfoldingTree;
use crate::error::{Error, Result};
use crate::fan;
use crate::geom::{PlanarPoint, RigidMotion};
use crate::path::{ConePassage, GeodesicPath, PathEvent};
use crate::surface::{Adjacency, ConeSurface};
use crate::tolerance::{EPS_ANG, EPS_INC};
use crate::word::Letter;
use serde::Serialize;
use std::f64::consts::PI;

/// A path laid out in the plane by composing crossing motions along it.
#[derive(Clone, Debug, Serialize)]
pub struct DevelopedPath {
    pub points: Vec<PlanarPoint>,
    /// Tree cell holding each segment.
    pub cells: Vec<usize>,
    /// Motion from the chart of the final triangle into the plane. For a
    /// closed path this is the chart of the starting triangle again.
    pub end_motion: RigidMotion,
}

/// Signed planar turn taken at a passage. Geodesic passages (both sides at
/// least π) develop straight; otherwise the turn follows the narrower side.
pub fn passage_turn(s: &ConeSurface, p: &ConePassage) -> f64 {
    let theta = s.classes[p.id].angle;
    let turn = if p.boundary {
        if p.pos_in >= p.pos_out {
            PI - (p.pos_in - p.pos_out)
        } else {
            (p.pos_out - p.pos_in) - PI
        }
    } else {
        let left = (p.pos_in - p.pos_out).rem_euclid(theta);
        let right = theta - left;
        if left >= PI - EPS_ANG && right >= PI - EPS_ANG {
            0.0
        } else if left <= right {
            PI - left
        } else {
            right - PI
        }
    };
    if p.boundary && turn.abs() <= EPS_ANG {
        0.0
    } else {
        turn
    }
}

fn crossing(s: &ConeSurface, from: usize, to: usize, letter: Option<Letter>) -> Result<(usize, RigidMotion)> {
    for e in 0..3 {
        if let Adjacency::Interior { tri, letter: l, motion, .. } = s.triangles[from].adj[e] {
            if tri == to && l == letter {
                return Ok((e, motion));
            }
        }
    }
    Err(Error::Geometry(format!("triangles {from} and {to} are not adjacent")))
}

fn escaped(cell: usize) -> Error {
    Error::Escape(format!("path leaves the unfolding at cell {cell}"))
}

fn lift_corner(
    s: &ConeSurface,
    tree: &UnfoldingTree,
    cell: usize,
    at: PlanarPoint,
    tri: usize,
    pos: PlanarPoint,
) -> Result<usize> {
    let k = s
        .corner_at(tree.cells[cell].source, at)
        .ok_or_else(|| Error::Geometry("passage away from a vertex".into()))?;
    let lift = &tree.lifts[tree.corner_lift[cell][k]];
    lift.corners
        .iter()
        .find(|&&(c, kk)| tree.cells[c].source == tri && s.triangles[tri].pts[kk].dist(pos) <= EPS_INC)
        .map(|&(c, _)| c)
        .ok_or_else(|| Error::Escape(format!("path leaves the unfolding around cell {cell}")))
}

fn start_cell(s: &ConeSurface, tree: &UnfoldingTree, tri: usize, a: PlanarPoint) -> Result<usize> {
    let root = tree.root;
    if tree.cells[root].source == tri {
        return Ok(root);
    }
    if s.corner_at(tree.cells[root].source, tree.base_pos).is_some() {
        if let Ok(c) = lift_corner(s, tree, root, tree.base_pos, tri, a) {
            return Ok(c);
        }
    }
    tree.cells[root]
        .neighbors
        .iter()
        .flatten()
        .copied()
        .find(|&n| tree.cells[n].source == tri)
        .ok_or_else(|| Error::Escape("path does not start at the unfolding base".into()))
}

/// Lay `path` out in the plane of `tree`, failing if it leaves the tree.
pub fn develop_path(s: &ConeSurface, tree: &UnfoldingTree, path: &GeodesicPath) -> Result<DevelopedPath> {
    let segs: Vec<(PlanarPoint, PlanarPoint, usize)> = path.segments().collect();
    let Some(&(a0, _, t0)) = segs.first() else {
        return Err(Error::InvalidArgument("path has no segments".into()));
    };
    let mut cell = start_cell(s, tree, t0, a0)?;
    let mut m = tree.cells[cell].motion;
    let mut points = vec![m.apply(a0)];
    let mut cells = Vec::new();
    let mut cur: Option<(PlanarPoint, PlanarPoint, usize)> = None;
    let mut pending: Option<Letter> = None;
    let mut passage: Option<ConePassage> = None;

    let advance = |next: (PlanarPoint, PlanarPoint, usize),
                       cur: (PlanarPoint, PlanarPoint, usize),
                       pending: Option<Letter>,
                       passage: Option<&ConePassage>,
                       cell: &mut usize,
                       m: &mut RigidMotion|
     -> Result<()> {
        let (ca, cb, ct) = cur;
        let (na, nb, nt) = next;
        if let Some(p) = passage {
            let d_in = m.apply_vector(cb - ca);
            let out = d_in.rotate(passage_turn(s, p));
            let chart_out = if na.dist(nb) > EPS_INC {
                nb - na
            } else {
                fan::direction_at(s, p.id, p.pos_out).2
            };
            let v = m.apply(cb);
            let rot = out.angle() - chart_out.angle();
            let r = RigidMotion::new(rot, PlanarPoint::default());
            *m = RigidMotion::new(rot, v - r.apply(na));
            *cell = lift_corner(s, tree, *cell, cb, nt, na)?;
        } else if nt != ct || pending.is_some() {
            let (e, motion) = crossing(s, ct, nt, pending)?;
            *m = m.compose(&motion.inverse());
            *cell = tree.cells[*cell].neighbors[e].ok_or_else(|| escaped(*cell))?;
        }
        Ok(())
    };

    for ev in &path.events {
        match ev {
            PathEvent::Seg { a, b, tri } => {
                let next = (*a, *b, *tri);
                if let Some(c) = cur {
                    advance(next, c, pending.take(), passage.take().as_ref(), &mut cell, &mut m)?;
                }
                cells.push(cell);
                points.push(m.apply(*b));
                cur = Some(next);
            }
            PathEvent::Cross(l) => pending = Some(*l),
            PathEvent::Cone(p) => passage = Some(p.clone()),
        }
    }
    if path.closed {
        if let Some(c) = cur {
            // the closing step only fixes the end motion; its cell may lie outside
            match advance(segs[0], c, pending.take(), passage.take().as_ref(), &mut cell, &mut m) {
                Ok(()) | Err(Error::Escape(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(DevelopedPath {
        points,
        cells,
        end_motion: m,
    })
}
