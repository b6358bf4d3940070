//! Angular coordinates around a vertex class.
//!
//! Directions leaving a vertex of total angle θ are parametrized by a
//! position in `[0, θ)`, measured counter-clockwise through the fan of
//! corners starting at the class's first corner.

use crate::geom::{ccw_sweep, PlanarPoint};
use crate::surface::{Adjacency, ConeSurface};
use crate::word::Letter;

/// Fan position of direction `dir` (in the chart of `tri`) leaving corner `corner`.
pub fn position_of(s: &ConeSurface, tri: usize, corner: usize, dir: PlanarPoint) -> f64 {
    let c = s.class_of(tri, corner);
    let idx = c
        .fan_index(tri, corner)
        .expect("corner belongs to its own class fan");
    let t = &s.triangles[tri];
    let first = t.pts[(corner + 1) % 3] - t.pts[corner];
    let sweep = ccw_sweep(first, dir);
    let width = t.corner_angle(corner);
    // directions just clockwise of the first edge wrap to 2π
    let sweep = if sweep > std::f64::consts::PI + width / 2.0 {
        sweep - 2.0 * std::f64::consts::PI
    } else {
        sweep
    };
    c.fan_offsets[idx] + sweep
}

/// Locate fan position `pos` of class `class`: returns the corner containing
/// it and the unit direction in that triangle's chart.
pub fn direction_at(s: &ConeSurface, class: usize, pos: f64) -> (usize, usize, PlanarPoint) {
    let c = &s.classes[class];
    let p = if c.boundary {
        pos.clamp(0.0, c.angle)
    } else {
        pos.rem_euclid(c.angle)
    };
    let mut idx = c.fan_offsets.partition_point(|&o| o <= p).saturating_sub(1);
    if idx >= c.fan.len() {
        idx = c.fan.len() - 1;
    }
    let (t, k) = c.fan[idx];
    let tri = &s.triangles[t];
    let first = tri.pts[(k + 1) % 3] - tri.pts[k];
    let dir = PlanarPoint::from_angle(first.angle() + (p - c.fan_offsets[idx]));
    (t, k, dir)
}

/// Letters crossed walking clockwise around a vertex from fan index `from` to `to`.
pub fn letters_clockwise(s: &ConeSurface, class: usize, from: usize, to: usize) -> Vec<Letter> {
    let c = &s.classes[class];
    let n = c.fan.len();
    let mut out = Vec::new();
    let mut i = from;
    while i != to {
        let (t, k) = c.fan[i];
        // clockwise crosses the outgoing edge k
        if let Adjacency::Interior { letter: Some(l), .. } = s.triangles[t].adj[k] {
            out.push(l);
        }
        if i == 0 {
            if c.boundary {
                break;
            }
            i = n - 1;
        } else {
            i -= 1;
        }
    }
    out
}

/// Fan index containing position `pos`.
pub fn fan_index_at(s: &ConeSurface, class: usize, pos: f64) -> usize {
    let (t, k, _) = direction_at(s, class, pos);
    s.classes[class].fan_index(t, k).unwrap_or(0)
}

/// Letters crossed walking counter-clockwise from fan index `from` to `to`.
pub fn letters_counter_clockwise(s: &ConeSurface, class: usize, from: usize, to: usize) -> Vec<Letter> {
    let c = &s.classes[class];
    let n = c.fan.len();
    let mut out = Vec::new();
    let mut i = from;
    while i != to {
        let (t, k) = c.fan[i];
        if let Adjacency::Interior { letter: Some(l), .. } = s.triangles[t].adj[(k + 2) % 3] {
            out.push(l);
        }
        i += 1;
        if i == n {
            if c.boundary {
                break;
            }
            i = 0;
        }
    }
    out
}

/// Build the passage record for a path arriving along fan position `pos_in`
/// (pointing back along the incoming segment) and leaving along `pos_out`.
pub fn passage(s: &ConeSurface, class: usize, pos_in: f64, pos_out: f64) -> crate::path::ConePassage {
    let c = &s.classes[class];
    let theta = c.angle;
    let idx_in = fan_index_at(s, class, pos_in);
    let idx_out = fan_index_at(s, class, pos_out);
    if c.boundary {
        // only the sector between the two directions lies inside the surface
        let (left, via) = if pos_in >= pos_out {
            (pos_in - pos_out, letters_clockwise(s, class, idx_in, idx_out))
        } else {
            (pos_out - pos_in, letters_counter_clockwise(s, class, idx_in, idx_out))
        };
        crate::path::ConePassage {
            id: class,
            left,
            right: theta - left,
            pos_in,
            pos_out,
            boundary: true,
            via,
        }
    } else {
        let left = (pos_in - pos_out).rem_euclid(theta);
        crate::path::ConePassage {
            id: class,
            left,
            right: theta - left,
            pos_in,
            pos_out,
            boundary: false,
            via: letters_clockwise(s, class, idx_in, idx_out),
        }
    }
}
